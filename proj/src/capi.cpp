#include "sgc.h"

#include <cstring>
#include <json.hpp>
#include <string>

#include "sgc/config.hpp"
#include "sgc/emit.hpp"
#include "sgc/error.hpp"
#include "sgc/experiments.hpp"
#include "sgc/io.hpp"
#include "sgc/metrics.hpp"
#include "sgc/pipeline.hpp"
#include "sgc/version.hpp"

using nlohmann::json;

struct sgc_graph_s {
  sgc::SignedGraph graph;
};

struct sgc_partition_s {
  sgc::Partition partition;
};

namespace {

thread_local std::string t_last_error;

sgc_status to_status(sgc::Status s) {
  switch (s) {
    case sgc::Status::Ok: return SGC_OK;
    case sgc::Status::InvalidArgument: return SGC_ERROR_INVALID_ARGUMENT;
    case sgc::Status::IsolatedNode: return SGC_ERROR_ISOLATED_NODE;
    case sgc::Status::IndefinitePencil: return SGC_ERROR_INDEFINITE_PENCIL;
    case sgc::Status::GuardExceeded: return SGC_ERROR_GUARD_EXCEEDED;
    case sgc::Status::IoError: return SGC_ERROR_IO;
    case sgc::Status::Internal: return SGC_ERROR_INTERNAL;
  }
  return SGC_ERROR_INTERNAL;
}

template <typename Fn>
sgc_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return SGC_OK;
  } catch (const sgc::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    t_last_error = std::string("json: ") + e.what();
    return SGC_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SGC_ERROR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_json(const char* text, const char* what) {
  sgc::require(text != nullptr, sgc::Status::InvalidArgument,
               std::string(what) + " must not be null");
  return json::parse(text);
}

json record_json(const sgc::TrialRecord& r) {
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
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

}  // namespace

extern "C" {

const char* sgc_version(void) { return sgc::kVersion; }

const char* sgc_last_error(void) { return t_last_error.c_str(); }

void sgc_string_free(char* s) { delete[] s; }

sgc_status sgc_graph_create(int64_t n, const int64_t* u, const int64_t* v,
                            const double* w, int64_t m, sgc_graph** out) {
  return guarded([&] {
    sgc::require(out && (m == 0 || (u && v && w)), sgc::Status::InvalidArgument,
                 "null argument");
    std::vector<sgc::EdgeTriple> edges;
    edges.reserve(m);
    for (int64_t i = 0; i < m; ++i) edges.push_back({u[i], v[i], w[i]});
    *out = new sgc_graph_s{sgc::SignedGraph::from_edges(n, edges)};
  });
}

sgc_status sgc_graph_read(const char* path, sgc_graph** out) {
  return guarded([&] {
    sgc::require(path && out, sgc::Status::InvalidArgument, "null argument");
    *out = new sgc_graph_s{sgc::read_edge_list(path)};
  });
}

sgc_status sgc_graph_write(const sgc_graph* g, const char* path) {
  return guarded([&] {
    sgc::require(g && path, sgc::Status::InvalidArgument, "null argument");
    sgc::write_edge_list(g->graph, path);
  });
}

int64_t sgc_graph_nodes(const sgc_graph* g) { return g ? g->graph.num_nodes() : -1; }

int64_t sgc_graph_edges(const sgc_graph* g) { return g ? g->graph.num_edges() : -1; }

sgc_status sgc_graph_largest_component(const sgc_graph* g, sgc_graph** out,
                                       int64_t* index_map) {
  return guarded([&] {
    sgc::require(g && out, sgc::Status::InvalidArgument, "null argument");
    auto [sub, map] = g->graph.largest_component();
    if (index_map) {
      for (int64_t i = 0; i < g->graph.num_nodes(); ++i) index_map[i] = map[i];
    }
    *out = new sgc_graph_s{std::move(sub)};
  });
}

void sgc_graph_free(sgc_graph* g) { delete g; }

sgc_status sgc_partition_create(const int32_t* labels, int64_t n, int32_t k,
                                sgc_partition** out) {
  return guarded([&] {
    sgc::require(out && (n == 0 || labels), sgc::Status::InvalidArgument, "null argument");
    sgc::Partition p;
    p.k = k;
    p.labels.assign(labels, labels + n);
    p.validate();
    *out = new sgc_partition_s{std::move(p)};
  });
}

int64_t sgc_partition_nodes(const sgc_partition* p) { return p ? p->partition.size() : -1; }

int32_t sgc_partition_k(const sgc_partition* p) { return p ? p->partition.k : -1; }

sgc_status sgc_partition_labels(const sgc_partition* p, int32_t* out) {
  return guarded([&] {
    sgc::require(p && out, sgc::Status::InvalidArgument, "null argument");
    for (int64_t i = 0; i < p->partition.size(); ++i) out[i] = p->partition.labels[i];
  });
}

sgc_status sgc_partition_read(const char* path, sgc_partition** out) {
  return guarded([&] {
    sgc::require(path && out, sgc::Status::InvalidArgument, "null argument");
    *out = new sgc_partition_s{sgc::read_labels(path)};
  });
}

sgc_status sgc_partition_write(const sgc_partition* p, const char* path) {
  return guarded([&] {
    sgc::require(p && path, sgc::Status::InvalidArgument, "null argument");
    sgc::write_labels(p->partition, path);
  });
}

void sgc_partition_free(sgc_partition* p) { delete p; }

sgc_status sgc_ssbm_sample(const char* params_json, uint64_t seed, sgc_graph** graph,
                           sgc_partition** truth) {
  return guarded([&] {
    sgc::require(graph, sgc::Status::InvalidArgument, "null graph output");
    json j = parse_json(params_json, "params_json");
    uint64_t embedded_seed = 0;
    sgc::SsbmParams params = sgc::ssbm_params_from_json(j, &embedded_seed);
    uint64_t use = seed != 0 ? seed : embedded_seed;
    auto [g, t] = sgc::ssbm_sample(params, use);
    *graph = new sgc_graph_s{std::move(g)};
    if (truth) *truth = new sgc_partition_s{std::move(t)};
  });
}

sgc_status sgc_cluster_graph(const sgc_graph* g, const sgc_partition* truth,
                             const char* config_json, sgc_partition** out,
                             int64_t* index_map, char** record_json_out) {
  return guarded([&] {
    sgc::require(g && out, sgc::Status::InvalidArgument, "null argument");
    json j = config_json ? parse_json(config_json, "config_json") : json::object();
    sgc::PipelineConfig cfg = sgc::pipeline_config_from_json(j);
    sgc::PipelineResult res =
        sgc::run_pipeline(g->graph, truth ? &truth->partition : nullptr, cfg);
    if (!res.record.valid) {
      sgc::fail(res.record.error_code == sgc::Status::Ok ? sgc::Status::Internal
                                                         : res.record.error_code,
                res.record.error);
    }
    if (index_map) {
      for (int64_t i = 0; i < g->graph.num_nodes(); ++i) index_map[i] = res.index_map[i];
    }
    if (record_json_out) *record_json_out = dup_string(record_json(res.record).dump(2));
    *out = new sgc_partition_s{std::move(res.predicted)};
  });
}

sgc_status sgc_ari(const sgc_partition* a, const sgc_partition* b, double* out) {
  return guarded([&] {
    sgc::require(a && b && out, sgc::Status::InvalidArgument, "null argument");
    *out = sgc::ari(a->partition, b->partition);
  });
}

sgc_status sgc_misclustering(const sgc_partition* pred, const sgc_partition* truth,
                             double* rate, int32_t* permutation) {
  return guarded([&] {
    sgc::require(pred && truth && rate, sgc::Status::InvalidArgument, "null argument");
    auto r = sgc::misclustering_rate(pred->partition, truth->partition);
    *rate = r.rate;
    if (permutation) {
      for (size_t i = 0; i < r.permutation.size(); ++i) permutation[i] = r.permutation[i];
    }
  });
}

sgc_status sgc_experiment(const char* kind, const char* config_json, char** report_json) {
  return guarded([&] {
    sgc::require(kind, sgc::Status::InvalidArgument, "null kind");
    json j = parse_json(config_json, "config_json");
    std::string name = kind;
    json report;
    if (name == "grid-tau") {
      report = sgc::grid_tau(sgc::grid_spec_from_json(j, false)).report;
    } else if (name == "grid-gamma") {
      report = sgc::grid_gamma(sgc::grid_spec_from_json(j, true)).report;
    } else if (name == "rho-curve") {
      report = sgc::rho_curve(sgc::curve_spec_from_json(j)).report;
    } else if (name == "compare") {
      report = sgc::compare_methods(sgc::compare_spec_from_json(j)).report;
    } else {
      sgc::fail(sgc::Status::InvalidArgument, "unknown experiment kind '" + name + "'");
    }
    if (report_json) *report_json = dup_string(report.dump(2));
  });
}

sgc_status sgc_theory_check(const char* config_json, char** report_json) {
  return guarded([&] {
    json j = config_json ? parse_json(config_json, "config_json") : json::object();
    uint64_t seed = j.value("seed", uint64_t{0});
    int draws = j.value("draws", 6);
    int64_t n_max = j.value("n_max", int64_t{400});
    json report = sgc::theory_check(seed, draws, n_max);
    if (j.contains("out_json")) {
      sgc::write_text(report.dump(2) + "\n", j.at("out_json").get<std::string>());
    }
    if (report_json) *report_json = dup_string(report.dump(2));
  });
}

}  // extern "C"
