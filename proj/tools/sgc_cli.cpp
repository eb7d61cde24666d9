// Command-line front end for the sgc shared library. Everything below talks
// to the library through the C API in sgc.h.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sgc.h"

using nlohmann::json;

namespace {

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = sgc_last_error();
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(1);
}

void check(sgc_status status, const std::string& context) {
  if (status != SGC_OK) die(context);
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in.good()) die("cannot open config file " + path);
  json j;
  in >> j;
  return j;
}

struct SsbmFlags {
  std::optional<int64_t> n;
  std::optional<int32_t> k;
  std::optional<double> p;
  std::optional<double> eta;
  std::optional<double> rho;
  std::string sizes;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "node count");
    cmd->add_option("--k", k, "cluster count");
    cmd->add_option("--p", p, "edge probability");
    cmd->add_option("--eta", eta, "sign-flip probability");
    cmd->add_option("--rho", rho, "aspect ratio (smallest/largest cluster)");
    cmd->add_option("--sizes", sizes, "comma-separated cluster sizes");
  }

  void apply(json& ssbm) const {
    if (n) ssbm["n"] = *n;
    if (k) ssbm["k"] = *k;
    if (p) ssbm["p"] = *p;
    if (eta) ssbm["eta"] = *eta;
    if (rho) ssbm["rho"] = *rho;
    if (!sizes.empty()) {
      std::vector<int64_t> parsed;
      std::istringstream ss(sizes);
      std::string tok;
      while (std::getline(ss, tok, ',')) parsed.push_back(std::stoll(tok));
      ssbm["sizes"] = parsed;
      ssbm.erase("rho");
    }
  }
};

struct ExperimentFlags {
  std::optional<int> trials;
  std::optional<uint64_t> seed;
  std::optional<int> threads;
  std::string out_csv, out_json, out_svg;
  std::string method;
  std::optional<double> tau_plus, tau_minus, gamma_plus, gamma_minus;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--trials", trials, "trials per cell (default 20)");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    cmd->add_option("--out-csv", out_csv, "CSV output path");
    cmd->add_option("--out-json", out_json, "JSON report output path");
    cmd->add_option("--out-svg", out_svg, "SVG output path");
    cmd->add_option("--method", method, "pipeline method");
    cmd->add_option("--tau-plus", tau_plus, "SPONGE tau+");
    cmd->add_option("--tau-minus", tau_minus, "SPONGE tau-");
    cmd->add_option("--gamma-plus", gamma_plus, "regularization gamma+");
    cmd->add_option("--gamma-minus", gamma_minus, "regularization gamma-");
  }

  void apply(json& cfg) const {
    if (trials) cfg["trials"] = *trials;
    if (seed) cfg["seed"] = *seed;
    if (threads) cfg["threads"] = *threads;
    if (!out_csv.empty()) cfg["out_csv"] = out_csv;
    if (!out_json.empty()) cfg["out_json"] = out_json;
    if (!out_svg.empty()) cfg["out_svg"] = out_svg;
    json& pipe = cfg["pipeline"];
    if (!pipe.is_object()) pipe = json::object();
    if (!method.empty()) pipe["method"] = method;
    if (tau_plus) pipe["tau_plus"] = *tau_plus;
    if (tau_minus) pipe["tau_minus"] = *tau_minus;
    if (gamma_plus) pipe["gamma_plus"] = *gamma_plus;
    if (gamma_minus) pipe["gamma_minus"] = *gamma_minus;
    if (pipe.empty()) cfg.erase("pipeline");
  }
};

void run_experiment(const char* kind, const json& cfg) {
  char* report = nullptr;
  check(sgc_experiment(kind, cfg.dump().c_str(), &report),
        std::string("experiment ") + kind);
  json r = json::parse(report);
  sgc_string_free(report);
  // Summary only; the full record goes to --out-json.
  std::cout << kind << ": " << r["cells"].size() << " cells done";
  if (cfg.contains("out_csv")) std::cout << ", csv -> " << cfg["out_csv"].get<std::string>();
  if (cfg.contains("out_json")) std::cout << ", json -> " << cfg["out_json"].get<std::string>();
  if (cfg.contains("out_svg")) std::cout << ", svg -> " << cfg["out_svg"].get<std::string>();
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral clustering of signed graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sgc_version()));

  // generate ---------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "sample a signed stochastic block model");
  SsbmFlags gen_ssbm;
  gen_ssbm.add_to(gen);
  std::string gen_config, gen_out, gen_labels;
  uint64_t gen_seed = 0;
  gen->add_option("--config", gen_config, "JSON config file (flags override it)");
  gen->add_option("--seed", gen_seed, "sample seed");
  gen->add_option("--out", gen_out, "edge-list output path")->required();
  gen->add_option("--labels", gen_labels, "ground-truth labels output path");

  // cluster ----------------------------------------------------------------
  auto* clu = app.add_subcommand("cluster", "cluster a signed graph from an edge list");
  std::string clu_graph, clu_truth, clu_out, clu_record, clu_config;
  ExperimentFlags clu_flags;
  std::optional<int32_t> clu_k;
  uint64_t clu_seed = 0;
  clu->add_option("--graph", clu_graph, "edge-list input path")->required();
  clu->add_option("--truth", clu_truth, "ground-truth labels path (enables scoring)");
  clu->add_option("--config", clu_config, "JSON pipeline config (flags override it)");
  clu->add_option("--method", clu_flags.method, "method (default SPONGE_sym)");
  clu->add_option("--k", clu_k, "cluster count")->required();
  clu->add_option("--tau-plus", clu_flags.tau_plus, "SPONGE tau+");
  clu->add_option("--tau-minus", clu_flags.tau_minus, "SPONGE tau-");
  clu->add_option("--gamma-plus", clu_flags.gamma_plus, "regularization gamma+");
  clu->add_option("--gamma-minus", clu_flags.gamma_minus, "regularization gamma-");
  clu->add_option("--seed", clu_seed, "pipeline seed");
  clu->add_option("--out", clu_out, "labels output path (-1 marks nodes outside the LCC)");
  clu->add_option("--record", clu_record, "trial record JSON output path");

  // experiments --------------------------------------------------------------
  struct Sweep {
    CLI::App* cmd;
    SsbmFlags ssbm;
    ExperimentFlags flags;
    std::string config;
    std::string rhos;
    std::string methods;
  };
  Sweep grids[4];
  const char* kinds[4] = {"grid-tau", "grid-gamma", "rho-curve", "compare"};
  const char* descs[4] = {"ARI heatmap over (tau+, tau-) for SPONGE_sym",
                          "ARI heatmap over (gamma+, gamma-) for a regularized method",
                          "mean ARI vs aspect ratio for a method suite",
                          "method comparison on one SSBM setting"};
  for (int i = 0; i < 4; ++i) {
    grids[i].cmd = app.add_subcommand(kinds[i], descs[i]);
    grids[i].cmd->add_option("--config", grids[i].config,
                             "JSON config file (flags override it)");
    grids[i].ssbm.add_to(grids[i].cmd);
    grids[i].flags.add_to(grids[i].cmd);
  }
  grids[2].cmd->add_option("--rhos", grids[2].rhos, "comma-separated aspect ratios");
  grids[2].cmd->add_option("--methods", grids[2].methods, "comma-separated method list");
  grids[3].cmd->add_option("--methods", grids[3].methods, "comma-separated method list");

  // theory-check -------------------------------------------------------------
  auto* theo = app.add_subcommand("theory-check",
                                  "closed-form vs dense-oracle comparison report");
  uint64_t theo_seed = 0;
  int theo_draws = 6;
  int64_t theo_nmax = 400;
  std::string theo_out;
  theo->add_option("--seed", theo_seed, "seed for parameter draws");
  theo->add_option("--draws", theo_draws, "parameter draws per check");
  theo->add_option("--n-max", theo_nmax, "largest n used in dense oracles");
  theo->add_option("--out", theo_out, "JSON report output path");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    json cfg = load_config(gen_config);
    gen_ssbm.apply(cfg);
    sgc_graph* graph = nullptr;
    sgc_partition* truth = nullptr;
    check(sgc_ssbm_sample(cfg.dump().c_str(), gen_seed, &graph, &truth), "generate");
    check(sgc_graph_write(graph, gen_out.c_str()), "write graph");
    if (!gen_labels.empty()) {
      check(sgc_partition_write(truth, gen_labels.c_str()), "write labels");
    }
    std::cout << "generated " << sgc_graph_nodes(graph) << " nodes, "
              << sgc_graph_edges(graph) << " edges -> " << gen_out << "\n";
    sgc_partition_free(truth);
    sgc_graph_free(graph);
    return 0;
  }

  if (clu->parsed()) {
    json cfg = load_config(clu_config);
    json wrap;  // reuse the experiment flag plumbing for pipeline keys
    wrap["pipeline"] = cfg;
    clu_flags.apply(wrap);
    json pipe = wrap["pipeline"];
    pipe["k"] = *clu_k;
    pipe["seed"] = clu_seed;

    sgc_graph* graph = nullptr;
    check(sgc_graph_read(clu_graph.c_str(), &graph), "read graph");
    sgc_partition* truth = nullptr;
    if (!clu_truth.empty()) {
      check(sgc_partition_read(clu_truth.c_str(), &truth), "read truth");
    }

    std::vector<int64_t> index_map(sgc_graph_nodes(graph));
    sgc_partition* pred = nullptr;
    char* record = nullptr;
    check(sgc_cluster_graph(graph, truth, pipe.dump().c_str(), &pred, index_map.data(),
                            &record),
          "cluster");
    json rec = json::parse(record);
    sgc_string_free(record);

    if (!clu_out.empty()) {
      std::vector<int32_t> labels(sgc_partition_nodes(pred));
      check(sgc_partition_labels(pred, labels.data()), "fetch labels");
      std::ofstream out(clu_out);
      if (!out.good()) die("cannot write " + clu_out);
      out << "node,label\n";
      for (size_t i = 0; i < index_map.size(); ++i) {
        out << i << "," << (index_map[i] >= 0 ? labels[index_map[i]] : -1) << "\n";
      }
    }
    if (!clu_record.empty()) {
      std::ofstream out(clu_record);
      if (!out.good()) die("cannot write " + clu_record);
      out << rec.dump(2) << "\n";
    }
    std::cout << "clustered " << rec["lcc_size"].get<int64_t>() << " nodes";
    if (truth) std::cout << ", ari " << rec["ari"].get<double>();
    std::cout << "\n";
    sgc_partition_free(pred);
    if (truth) sgc_partition_free(truth);
    sgc_graph_free(graph);
    return 0;
  }

  for (int i = 0; i < 4; ++i) {
    if (!grids[i].cmd->parsed()) continue;
    json cfg = load_config(grids[i].config);
    if (!cfg.contains("ssbm")) cfg["ssbm"] = json::object();
    grids[i].ssbm.apply(cfg["ssbm"]);
    grids[i].flags.apply(cfg);
    if (!grids[i].rhos.empty()) {
      std::istringstream ss(grids[i].rhos);
      std::string tok;
      std::vector<double> rhos;
      while (std::getline(ss, tok, ',')) rhos.push_back(std::stod(tok));
      cfg["rhos"] = rhos;
    }
    if (!grids[i].methods.empty()) {
      std::istringstream ss(grids[i].methods);
      std::string tok;
      std::vector<std::string> methods;
      while (std::getline(ss, tok, ',')) methods.push_back(tok);
      cfg["methods"] = methods;
    }
    run_experiment(kinds[i], cfg);
    return 0;
  }

  if (theo->parsed()) {
    json cfg = {{"seed", theo_seed}, {"draws", theo_draws}, {"n_max", theo_nmax}};
    if (!theo_out.empty()) cfg["out_json"] = theo_out;
    char* report = nullptr;
    check(sgc_theory_check(cfg.dump().c_str(), &report), "theory-check");
    json r = json::parse(report);
    sgc_string_free(report);
    for (const auto& c : r["checks"]) {
      std::cout << (c["pass"].get<bool>() ? "[pass] " : "[FAIL] ")
                << c["name"].get<std::string>() << "\n";
    }
    std::cout << (r["all_pass"].get<bool>() ? "all checks passed\n"
                                            : "SOME CHECKS FAILED\n");
    return r["all_pass"].get<bool>() ? 0 : 1;
  }

  return 0;
}
