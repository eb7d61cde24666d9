#include "sgc/experiments.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "sgc/clustering.hpp"
#include "sgc/emit.hpp"
#include "sgc/error.hpp"
#include "sgc/metrics.hpp"
#include "sgc/operators.hpp"
#include "sgc/rng.hpp"
#include "sgc/theory.hpp"
#include "sgc/version.hpp"

namespace sgc {

using nlohmann::json;

SsbmParams SsbmSpec::materialize(uint64_t sizes_seed) const {
  if (sizes) return SsbmParams::with_sizes(*sizes, p, eta);
  double r = rho.value_or(1.0);
  if (r >= 1.0) return SsbmParams::with_equal_sizes(n, k, p, eta);
  return SsbmParams::with_sizes(sizes_from_rho(n, k, r, sizes_seed), p, eta);
}

uint64_t unit_seed(uint64_t master, int64_t cell, int64_t trial) {
  uint64_t branch = Rng::derive(master, 0xce11 + static_cast<uint64_t>(cell)).next_u64();
  return Rng::derive(branch, static_cast<uint64_t>(trial)).next_u64();
}

TrialSample sample_trial(const SsbmSpec& spec, uint64_t master, int64_t trial,
                         int max_resample) {
  TrialSample out;
  uint64_t sizes_seed = Rng::derive(master, 0x512e + static_cast<uint64_t>(trial)).next_u64();
  SsbmParams params = spec.materialize(sizes_seed);
  for (int attempt = 0; attempt < std::max(1, max_resample); ++attempt) {
    uint64_t graph_seed =
        Rng::derive(Rng::derive(master, 0x9a8f + static_cast<uint64_t>(trial)).next_u64(),
                    static_cast<uint64_t>(attempt))
            .next_u64();
    auto [graph, truth] = ssbm_sample(params, graph_seed);
    out.attempts = attempt + 1;
    auto [comp, sizes] = connected_components(graph.adjacency());
    int64_t biggest = 0;
    for (int64_t s : sizes) biggest = std::max(biggest, s);
    if (2 * biggest >= params.n) {
      out.ok = true;
      out.graph = std::move(graph);
      out.truth = std::move(truth);
      return out;
    }
  }
  return out;
}

void parallel_for(int64_t count, int threads, const std::function<void(int64_t)>& fn) {
  if (count <= 0) return;
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = static_cast<int>(std::min<int64_t>(std::max(workers, 1), count));
  if (workers == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

json record_to_json(const TrialRecord& r) {
  // Wall time stays out of emitted records so reruns are byte-identical.
  json j;
  j["valid"] = r.valid;
  j["error"] = r.error;
  j["ari"] = r.ari;
  j["mis_rate"] = r.mis_rate;
  j["kmeans_cost"] = r.kmeans_cost;
  j["max_residual"] = r.max_residual;
  j["eig_iterations"] = r.eig_iterations;
  j["eig_converged"] = r.eig_converged;
  j["lcc_size"] = r.lcc_size;
  return j;
}

json ssbm_spec_to_json(const SsbmSpec& s) {
  json j;
  j["n"] = s.n;
  j["k"] = s.k;
  j["p"] = s.p;
  j["eta"] = s.eta;
  if (s.sizes) j["sizes"] = *s.sizes;
  if (s.rho) j["rho"] = *s.rho;
  return j;
}

json pipeline_to_json(const PipelineConfig& c) {
  json j;
  j["method"] = method_name(c.method);
  j["k"] = c.k;
  j["tau_plus"] = c.tau_plus;
  j["tau_minus"] = c.tau_minus;
  if (c.gamma_plus) j["gamma_plus"] = *c.gamma_plus;
  if (c.gamma_minus) j["gamma_minus"] = *c.gamma_minus;
  j["sponge_zero_degree"] =
      c.sponge_zero_degree == ZeroDegreePolicy::Reject ? "reject" : "pseudoinverse";
  j["eig"] = {{"tol", c.eig.tol}, {"max_iter", c.eig.max_iter}};
  j["kmeans"] = {{"restarts", c.kmeans.restarts},
                 {"max_iter", c.kmeans.max_iter},
                 {"tol", c.kmeans.tol},
                 {"row_normalize", c.kmeans.row_normalize}};
  j["seed"] = c.seed;
  return j;
}

CellStats aggregate(std::vector<TrialRecord> trials) {
  CellStats cell;
  cell.trials = std::move(trials);
  double sum = 0.0, sum2 = 0.0;
  for (const auto& r : cell.trials) {
    if (!r.valid) continue;
    ++cell.valid_trials;
    sum += r.ari;
    sum2 += r.ari * r.ari;
  }
  cell.invalid = cell.valid_trials == 0;
  if (cell.valid_trials > 0) {
    double nv = static_cast<double>(cell.valid_trials);
    cell.mean_ari = sum / nv;
    if (cell.valid_trials > 1) {
      double var = (sum2 - sum * sum / nv) / (nv - 1.0);
      cell.std_ari = std::sqrt(std::max(0.0, var));
    }
  }
  return cell;
}

json cell_to_json(const CellStats& cell) {
  json j;
  j["mean_ari"] = cell.mean_ari;
  j["std_ari"] = cell.std_ari;
  j["valid_trials"] = cell.valid_trials;
  j["invalid"] = cell.invalid;
  json trials = json::array();
  for (const auto& r : cell.trials) trials.push_back(record_to_json(r));
  j["trials"] = trials;
  return j;
}

void write_outputs(const ExperimentPaths& out, const json& report, const Table& table,
                   const std::string& svg) {
  if (!out.csv.empty()) write_csv(table, out.csv);
  if (!out.json.empty()) write_text(report.dump(2) + "\n", out.json);
  if (!out.svg.empty() && !svg.empty()) write_text(svg, out.svg);
}

// Shared engine: one sampled graph per trial, every cell runs on it. The
// pipeline clusters into the model's k.
std::vector<CellStats> run_cells(const SsbmSpec& ssbm, int trials, uint64_t master,
                                 int threads, int max_resample, int64_t cell_count,
                                 const std::function<PipelineConfig(int64_t)>& cell_config,
                                 std::vector<TrialSample>* samples_out = nullptr) {
  std::vector<TrialSample> samples(trials);
  parallel_for(trials, threads, [&](int64_t t) {
    samples[t] = sample_trial(ssbm, master, t, max_resample);
  });

  std::vector<std::vector<TrialRecord>> records(cell_count);
  for (auto& v : records) v.resize(trials);
  parallel_for(cell_count * trials, threads, [&](int64_t idx) {
    int64_t cell = idx / trials;
    int64_t trial = idx % trials;
    if (!samples[trial].ok) {
      TrialRecord r;
      r.valid = false;
      r.error = "resample cap exceeded: largest component stayed below n/2";
      records[cell][trial] = r;
      return;
    }
    PipelineConfig cfg = cell_config(cell);
    cfg.k = ssbm.k;
    cfg.seed = unit_seed(master, cell, trial);
    records[cell][trial] =
        run_pipeline(samples[trial].graph, &samples[trial].truth, cfg).record;
  });

  std::vector<CellStats> cells(cell_count);
  for (int64_t c = 0; c < cell_count; ++c) cells[c] = aggregate(std::move(records[c]));
  if (samples_out) *samples_out = std::move(samples);
  return cells;
}

GridOutcome run_grid(const GridSpec& spec, bool gamma_mode) {
  require(!spec.axis_a.empty() && !spec.axis_b.empty(), Status::InvalidArgument,
          "grid axes must be nonempty");
  require(spec.trials >= 1, Status::InvalidArgument, "need at least one trial");
  const int64_t na = static_cast<int64_t>(spec.axis_a.size());
  const int64_t nb = static_cast<int64_t>(spec.axis_b.size());

  auto cfg_for = [&](int64_t cell) {
    PipelineConfig cfg = spec.base;
    double a = spec.axis_a[cell / nb];
    double b = spec.axis_b[cell % nb];
    if (gamma_mode) {
      cfg.gamma_plus = a;
      cfg.gamma_minus = b;
    } else {
      cfg.tau_plus = a;
      cfg.tau_minus = b;
    }
    return cfg;
  };

  GridOutcome out;
  out.axis_a = spec.axis_a;
  out.axis_b = spec.axis_b;
  out.cells = run_cells(spec.ssbm, spec.trials, spec.seed, spec.threads,
                        spec.max_resample, na * nb, cfg_for);

  const char* a_name = gamma_mode ? "gamma_plus" : "tau_plus";
  const char* b_name = gamma_mode ? "gamma_minus" : "tau_minus";

  Table table;
  table.columns = {a_name, b_name, "mean_ari", "std_ari", "trials", "invalid"};
  json cells_json = json::array();
  for (int64_t ia = 0; ia < na; ++ia) {
    for (int64_t ib = 0; ib < nb; ++ib) {
      const CellStats& cell = out.cells[ia * nb + ib];
      table.rows.push_back({format_double(spec.axis_a[ia]), format_double(spec.axis_b[ib]),
                            format_double(cell.mean_ari), format_double(cell.std_ari),
                            std::to_string(cell.valid_trials),
                            cell.invalid ? "1" : "0"});
      json cj = cell_to_json(cell);
      cj[a_name] = spec.axis_a[ia];
      cj[b_name] = spec.axis_b[ib];
      cells_json.push_back(cj);
    }
  }

  json report;
  report["experiment"] = gamma_mode ? "grid-gamma" : "grid-tau";
  report["version"] = kVersion;
  report["config"] = {{"ssbm", ssbm_spec_to_json(spec.ssbm)},
                      {"trials", spec.trials},
                      {"seed", spec.seed},
                      {"max_resample", spec.max_resample},
                      {a_name, spec.axis_a},
                      {b_name, spec.axis_b},
                      {"pipeline", pipeline_to_json(spec.base)}};
  report["cells"] = cells_json;
  out.report = report;

  // Heatmap with axis a on x and axis b on y.
  std::vector<double> values(na * nb);
  std::vector<bool> invalid(na * nb);
  for (int64_t ib = 0; ib < nb; ++ib) {
    for (int64_t ia = 0; ia < na; ++ia) {
      values[ib * na + ia] = out.cells[ia * nb + ib].mean_ari;
      invalid[ib * na + ia] = out.cells[ia * nb + ib].invalid;
    }
  }
  std::string svg = svg_heatmap(
      spec.axis_a, spec.axis_b, values, invalid, a_name, b_name,
      std::string("mean ARI, ") + method_name(spec.base.method));
  write_outputs(spec.out, report, table, svg);
  return out;
}

}  // namespace

GridOutcome grid_tau(const GridSpec& spec) {
  require(spec.base.method == Method::SpongeSym || spec.base.method == Method::Sponge ||
              spec.base.method == Method::SpongeSymReg,
          Status::InvalidArgument, "grid-tau sweeps a SPONGE-family method");
  return run_grid(spec, false);
}

GridOutcome grid_gamma(const GridSpec& spec) {
  require(spec.base.method == Method::SymSignedLaplacianReg ||
              spec.base.method == Method::SpongeSymReg,
          Status::InvalidArgument, "grid-gamma sweeps a regularized method");
  return run_grid(spec, true);
}

CurveOutcome rho_curve(const CurveSpec& spec) {
  require(!spec.rhos.empty() && !spec.methods.empty(), Status::InvalidArgument,
          "rho grid and method list must be nonempty");
  const int64_t nr = static_cast<int64_t>(spec.rhos.size());
  const int64_t nm = static_cast<int64_t>(spec.methods.size());

  CurveOutcome out;
  out.rhos = spec.rhos;
  out.methods = spec.methods;
  out.cells.resize(nm * nr);

  // One graph family per rho; methods pair up within it. Graphs for distinct
  // rho values use distinct master streams.
  for (int64_t ir = 0; ir < nr; ++ir) {
    SsbmSpec ssbm = spec.ssbm;
    ssbm.rho = spec.rhos[ir];
    ssbm.sizes.reset();
    uint64_t rho_master = Rng::derive(spec.seed, 0x0cc0 + static_cast<uint64_t>(ir)).next_u64();
    auto cfg_for = [&](int64_t cell) {
      PipelineConfig cfg = spec.base;
      cfg.method = spec.methods[cell];
      return cfg;
    };
    std::vector<CellStats> cells =
        run_cells(ssbm, spec.trials, rho_master, spec.threads, spec.max_resample, nm,
                  cfg_for);
    for (int64_t im = 0; im < nm; ++im) out.cells[im * nr + ir] = std::move(cells[im]);
  }

  Table table;
  table.columns = {"method", "rho", "mean_ari", "std_ari", "trials"};
  json cells_json = json::array();
  for (int64_t im = 0; im < nm; ++im) {
    for (int64_t ir = 0; ir < nr; ++ir) {
      const CellStats& cell = out.cells[im * nr + ir];
      table.rows.push_back({method_name(spec.methods[im]), format_double(spec.rhos[ir]),
                            format_double(cell.mean_ari), format_double(cell.std_ari),
                            std::to_string(cell.valid_trials)});
      json cj = cell_to_json(cell);
      cj["method"] = method_name(spec.methods[im]);
      cj["rho"] = spec.rhos[ir];
      cells_json.push_back(cj);
    }
  }

  json report;
  report["experiment"] = "rho-curve";
  report["version"] = kVersion;
  json method_names = json::array();
  for (Method m : spec.methods) method_names.push_back(method_name(m));
  report["config"] = {{"ssbm", ssbm_spec_to_json(spec.ssbm)},
                      {"rhos", spec.rhos},
                      {"methods", method_names},
                      {"trials", spec.trials},
                      {"seed", spec.seed},
                      {"max_resample", spec.max_resample},
                      {"pipeline", pipeline_to_json(spec.base)}};
  report["cells"] = cells_json;
  out.report = report;

  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
  for (int64_t im = 0; im < nm; ++im) {
    names.push_back(method_name(spec.methods[im]));
    std::vector<double> ys;
    for (int64_t ir = 0; ir < nr; ++ir) {
      const CellStats& cell = out.cells[im * nr + ir];
      ys.push_back(cell.invalid ? std::nan("") : cell.mean_ari);
    }
    series.push_back(std::move(ys));
  }
  std::string svg = svg_curves(spec.rhos, names, series, "rho", "mean ARI",
                               "mean ARI vs aspect ratio");
  write_outputs(spec.out, report, table, svg);
  return out;
}

CompareOutcome compare_methods(const CompareSpec& spec) {
  require(!spec.methods.empty(), Status::InvalidArgument, "method list must be nonempty");
  const int64_t nm = static_cast<int64_t>(spec.methods.size());

  CompareOutcome out;
  out.methods = spec.methods;
  auto cfg_for = [&](int64_t cell) {
    PipelineConfig cfg = spec.base;
    cfg.method = spec.methods[cell];
    return cfg;
  };
  out.cells = run_cells(spec.ssbm, spec.trials, spec.seed, spec.threads,
                        spec.max_resample, nm, cfg_for);

  Table table;
  table.columns = {"method", "mean_ari", "std_ari", "mean_mis_rate", "trials"};
  json cells_json = json::array();
  for (int64_t im = 0; im < nm; ++im) {
    const CellStats& cell = out.cells[im];
    double mis = 0.0;
    int mis_count = 0;
    for (const auto& r : cell.trials) {
      if (r.valid && r.mis_rate >= 0.0) {
        mis += r.mis_rate;
        ++mis_count;
      }
    }
    mis = mis_count > 0 ? mis / mis_count : -1.0;
    table.rows.push_back({method_name(spec.methods[im]), format_double(cell.mean_ari),
                          format_double(cell.std_ari), format_double(mis),
                          std::to_string(cell.valid_trials)});
    json cj = cell_to_json(cell);
    cj["method"] = method_name(spec.methods[im]);
    cj["mean_mis_rate"] = mis;
    cells_json.push_back(cj);
  }

  json report;
  report["experiment"] = "compare";
  report["version"] = kVersion;
  json method_names = json::array();
  for (Method m : spec.methods) method_names.push_back(method_name(m));
  report["config"] = {{"ssbm", ssbm_spec_to_json(spec.ssbm)},
                      {"methods", method_names},
                      {"trials", spec.trials},
                      {"seed", spec.seed},
                      {"max_resample", spec.max_resample},
                      {"pipeline", pipeline_to_json(spec.base)}};
  report["cells"] = cells_json;
  out.report = report;

  write_outputs(spec.out, report, table, "");
  return out;
}

}  // namespace sgc
