#include "sgc/config.hpp"

#include <cmath>
#include <set>

#include "sgc/error.hpp"

namespace sgc {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
  require(j.is_object(), Status::InvalidArgument, std::string(what) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    require(allowed.count(it.key()) > 0, Status::InvalidArgument,
            std::string("unknown key '") + it.key() + "' in " + what);
  }
}

}  // namespace

SsbmParams ssbm_params_from_json(const json& j, uint64_t* seed_out) {
  check_keys(j, {"n", "k", "sizes", "rho", "p", "eta", "seed"}, "ssbm params");
  require(j.contains("n") && j.contains("k") && j.contains("p") && j.contains("eta"),
          Status::InvalidArgument, "ssbm params need n, k, p, eta");
  int64_t n = j.at("n").get<int64_t>();
  int32_t k = j.at("k").get<int32_t>();
  double p = j.at("p").get<double>();
  double eta = j.at("eta").get<double>();
  uint64_t seed = j.value("seed", uint64_t{0});
  if (seed_out) *seed_out = seed;

  if (j.contains("sizes")) {
    require(!j.contains("rho"), Status::InvalidArgument, "give sizes or rho, not both");
    auto sizes = j.at("sizes").get<std::vector<int64_t>>();
    auto params = SsbmParams::with_sizes(std::move(sizes), p, eta);
    require(params.n == n, Status::InvalidArgument, "sizes must sum to n");
    require(params.k == k, Status::InvalidArgument, "sizes must have k entries");
    return params;
  }
  double rho = j.value("rho", 1.0);
  if (rho >= 1.0) return SsbmParams::with_equal_sizes(n, k, p, eta);
  return SsbmParams::with_sizes(sizes_from_rho(n, k, rho, seed), p, eta);
}

SsbmSpec ssbm_spec_from_json(const json& j) {
  check_keys(j, {"n", "k", "sizes", "rho", "p", "eta", "seed"}, "ssbm spec");
  SsbmSpec spec;
  spec.n = j.at("n").get<int64_t>();
  spec.k = j.at("k").get<int32_t>();
  spec.p = j.at("p").get<double>();
  spec.eta = j.at("eta").get<double>();
  if (j.contains("sizes")) {
    spec.sizes = j.at("sizes").get<std::vector<int64_t>>();
  } else if (j.contains("rho")) {
    spec.rho = j.at("rho").get<double>();
  }
  return spec;
}

PipelineConfig pipeline_config_from_json(const json& j) {
  check_keys(j,
             {"method", "k", "tau_plus", "tau_minus", "gamma_plus", "gamma_minus",
              "sponge_zero_degree", "eig", "kmeans", "seed"},
             "pipeline config");
  PipelineConfig cfg;
  if (j.contains("method")) cfg.method = method_from_name(j.at("method").get<std::string>());
  if (j.contains("sponge_zero_degree")) {
    std::string policy = j.at("sponge_zero_degree").get<std::string>();
    if (policy == "reject") {
      cfg.sponge_zero_degree = ZeroDegreePolicy::Reject;
    } else {
      require(policy == "pseudoinverse", Status::InvalidArgument,
              "sponge_zero_degree must be 'pseudoinverse' or 'reject'");
    }
  }
  cfg.k = j.value("k", cfg.k);
  cfg.tau_plus = j.value("tau_plus", cfg.tau_plus);
  cfg.tau_minus = j.value("tau_minus", cfg.tau_minus);
  if (j.contains("gamma_plus")) cfg.gamma_plus = j.at("gamma_plus").get<double>();
  if (j.contains("gamma_minus")) cfg.gamma_minus = j.at("gamma_minus").get<double>();
  if (j.contains("eig")) {
    const json& e = j.at("eig");
    check_keys(e, {"tol", "max_iter"}, "eig options");
    cfg.eig.tol = e.value("tol", cfg.eig.tol);
    cfg.eig.max_iter = e.value("max_iter", cfg.eig.max_iter);
  }
  if (j.contains("kmeans")) {
    const json& m = j.at("kmeans");
    check_keys(m, {"restarts", "max_iter", "tol", "row_normalize"}, "kmeans options");
    cfg.kmeans.restarts = m.value("restarts", cfg.kmeans.restarts);
    cfg.kmeans.max_iter = m.value("max_iter", cfg.kmeans.max_iter);
    cfg.kmeans.tol = m.value("tol", cfg.kmeans.tol);
    cfg.kmeans.row_normalize = m.value("row_normalize", cfg.kmeans.row_normalize);
  }
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

std::vector<double> axis_from_json(const json& j) {
  if (j.is_array()) {
    auto values = j.get<std::vector<double>>();
    require(!values.empty(), Status::InvalidArgument, "axis array must be nonempty");
    return values;
  }
  check_keys(j, {"min", "max", "count", "scale", "prepend_zero"}, "axis spec");
  double lo = j.at("min").get<double>();
  double hi = j.at("max").get<double>();
  int count = j.at("count").get<int>();
  require(count >= 1, Status::InvalidArgument, "axis count must be positive");
  bool log_scale = j.value("scale", std::string("log")) == "log";
  std::vector<double> values;
  if (j.value("prepend_zero", false)) values.push_back(0.0);
  if (count == 1) {
    values.push_back(lo);
    return values;
  }
  require(hi > lo, Status::InvalidArgument, "axis needs max > min");
  if (log_scale) {
    require(lo > 0.0, Status::InvalidArgument, "log axis needs min > 0");
    for (int i = 0; i < count; ++i) {
      values.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    }
  } else {
    for (int i = 0; i < count; ++i) {
      values.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    }
  }
  return values;
}

namespace {

template <typename Spec>
void fill_common(Spec& spec, const json& j) {
  spec.ssbm = ssbm_spec_from_json(j.at("ssbm"));
  spec.trials = j.value("trials", spec.trials);
  spec.seed = j.value("seed", spec.seed);
  spec.threads = j.value("threads", spec.threads);
  spec.max_resample = j.value("max_resample", spec.max_resample);
  if (j.contains("pipeline")) spec.base = pipeline_config_from_json(j.at("pipeline"));
  spec.base.k = spec.ssbm.k;
  spec.out.csv = j.value("out_csv", std::string());
  spec.out.json = j.value("out_json", std::string());
  spec.out.svg = j.value("out_svg", std::string());
}

}  // namespace

GridSpec grid_spec_from_json(const json& j, bool gamma_mode) {
  check_keys(j,
             {"ssbm", "trials", "seed", "threads", "max_resample", "pipeline", "out_csv",
              "out_json", "out_svg", "tau_plus_grid", "tau_minus_grid",
              "gamma_plus_grid", "gamma_minus_grid"},
             "grid config");
  GridSpec spec;
  fill_common(spec, j);
  if (gamma_mode) {
    // Default gamma axes: zero plus a log sweep up to roughly the mean degree.
    double dbar = spec.ssbm.p * static_cast<double>(spec.ssbm.n - 1);
    json fallback = {{"min", std::max(0.25, dbar / 16.0)},
                     {"max", std::max(1.0, 2.0 * dbar)},
                     {"count", 4},
                     {"scale", "log"},
                     {"prepend_zero", true}};
    spec.axis_a = axis_from_json(j.contains("gamma_plus_grid") ? j.at("gamma_plus_grid")
                                                               : fallback);
    spec.axis_b = axis_from_json(j.contains("gamma_minus_grid") ? j.at("gamma_minus_grid")
                                                                : fallback);
    if (!j.contains("pipeline") || !j.at("pipeline").contains("method")) {
      spec.base.method = Method::SymSignedLaplacianReg;
    }
  } else {
    spec.axis_a = axis_from_json(
        j.contains("tau_plus_grid")
            ? j.at("tau_plus_grid")
            : json{{"min", 1e-2}, {"max", 1e2}, {"count", 5}, {"scale", "log"}});
    spec.axis_b = axis_from_json(j.contains("tau_minus_grid")
                                     ? j.at("tau_minus_grid")
                                     : json{{"min", 1e-3},
                                            {"max", 1e1},
                                            {"count", 4},
                                            {"scale", "log"},
                                            {"prepend_zero", true}});
    if (!j.contains("pipeline") || !j.at("pipeline").contains("method")) {
      spec.base.method = Method::SpongeSym;
    }
  }
  return spec;
}

CurveSpec curve_spec_from_json(const json& j) {
  check_keys(j,
             {"ssbm", "trials", "seed", "threads", "max_resample", "pipeline", "out_csv",
              "out_json", "out_svg", "rhos", "methods"},
             "curve config");
  CurveSpec spec;
  fill_common(spec, j);
  spec.rhos = j.contains("rhos") ? j.at("rhos").get<std::vector<double>>()
                                 : std::vector<double>{0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
  if (j.contains("methods")) {
    for (const auto& name : j.at("methods")) {
      spec.methods.push_back(method_from_name(name.get<std::string>()));
    }
  } else {
    spec.methods = {Method::Adjacency, Method::SignedLaplacian,
                    Method::SymSignedLaplacian, Method::Sponge, Method::SpongeSym,
                    Method::BRC, Method::BNC};
  }
  return spec;
}

CompareSpec compare_spec_from_json(const json& j) {
  check_keys(j,
             {"ssbm", "trials", "seed", "threads", "max_resample", "pipeline", "out_csv",
              "out_json", "out_svg", "methods"},
             "compare config");
  CompareSpec spec;
  fill_common(spec, j);
  if (j.contains("methods")) {
    for (const auto& name : j.at("methods")) {
      spec.methods.push_back(method_from_name(name.get<std::string>()));
    }
  } else {
    spec.methods = {Method::Adjacency, Method::SignedLaplacian,
                    Method::SymSignedLaplacian, Method::Sponge, Method::SpongeSym,
                    Method::BRC, Method::BNC};
  }
  return spec;
}

}  // namespace sgc
