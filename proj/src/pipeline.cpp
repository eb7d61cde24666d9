#include "sgc/pipeline.hpp"

#include <chrono>

#include "sgc/error.hpp"
#include "sgc/metrics.hpp"
#include "sgc/operators.hpp"
#include "sgc/rng.hpp"
#include "sgc/theory.hpp"

namespace sgc {

const char* method_name(Method m) {
  switch (m) {
    case Method::Adjacency: return "A";
    case Method::SignedLaplacian: return "Lbar";
    case Method::SymSignedLaplacian: return "Lbar_sym";
    case Method::Sponge: return "SPONGE";
    case Method::SpongeSym: return "SPONGE_sym";
    case Method::BRC: return "BRC";
    case Method::BNC: return "BNC";
    case Method::SymSignedLaplacianReg: return "Lbar_sym_reg";
    case Method::SpongeSymReg: return "SPONGE_sym_reg";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : all_methods()) {
    if (name == method_name(m)) return m;
  }
  fail(Status::InvalidArgument, "unknown method '" + name + "'");
}

std::vector<Method> all_methods() {
  return {Method::Adjacency,  Method::SignedLaplacian, Method::SymSignedLaplacian,
          Method::Sponge,     Method::SpongeSym,       Method::BRC,
          Method::BNC,        Method::SymSignedLaplacianReg, Method::SpongeSymReg};
}

namespace {

bool is_pencil_method(Method m) {
  return m == Method::Sponge || m == Method::SpongeSym || m == Method::SpongeSymReg;
}

bool uses_k_minus_1(Method m) {
  return m == Method::SignedLaplacian || m == Method::SymSignedLaplacian ||
         m == Method::SymSignedLaplacianReg;
}

Regularization resolve_gamma(const SignedGraph& g, const PipelineConfig& cfg) {
  if (cfg.gamma_plus && cfg.gamma_minus) return {*cfg.gamma_plus, *cfg.gamma_minus};
  RegRecommendation rec = recommended_regularization(g, 0.0);
  if (cfg.method == Method::SymSignedLaplacianReg) {
    return {cfg.gamma_plus.value_or(rec.gamma_lap_plus),
            cfg.gamma_minus.value_or(rec.gamma_lap_minus)};
  }
  return {cfg.gamma_plus.value_or(rec.gamma_sponge),
          cfg.gamma_minus.value_or(rec.gamma_sponge)};
}

Embedding embed(const SignedGraph& lcc, const PipelineConfig& cfg, int dim,
                Eigen::VectorXd& eigenvalues) {
  SolveOptions opts = cfg.eig;
  opts.seed = Rng::derive(cfg.seed, 1).next_u64();

  if (is_pencil_method(cfg.method)) {
    Pencil pencil =
        cfg.method == Method::Sponge
            ? sponge_pencil(lcc, cfg.tau_plus, cfg.tau_minus)
            : sponge_sym_pencil(lcc, cfg.tau_plus, cfg.tau_minus,
                                cfg.method == Method::SpongeSymReg
                                    ? resolve_gamma(lcc, cfg)
                                    : Regularization{},
                                cfg.sponge_zero_degree);
    Embedding e = smallest_k_generalized(pencil, dim, opts);
    eigenvalues = e.values;
    return e;
  }

  Operator op = [&] {
    switch (cfg.method) {
      case Method::Adjacency: return adjacency_operator(lcc);
      case Method::SignedLaplacian: return signed_laplacian(lcc);
      case Method::SymSignedLaplacian: return sym_signed_laplacian(lcc);
      case Method::BRC: return brc_operator(lcc);
      case Method::BNC: return bnc_operator(lcc);
      case Method::SymSignedLaplacianReg:
        return regularized_sym_signed_laplacian(lcc, resolve_gamma(lcc, cfg));
      default: fail(Status::Internal, "unhandled method");
    }
  }();

  if (op.embeds_largest()) {
    Embedding e = smallest_k(op.negated(), dim, opts);
    eigenvalues = (-e.values).reverse();
    return e;
  }
  Embedding e = smallest_k(op, dim, opts);
  eigenvalues = e.values;
  return e;
}

}  // namespace

PipelineResult run_pipeline(const SignedGraph& g, const Partition* truth,
                            const PipelineConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  PipelineResult out;
  out.record.valid = false;
  try {
    require(cfg.k >= 1, Status::InvalidArgument, "k must be positive");
    auto [lcc, map] = g.largest_component();
    out.index_map = std::move(map);
    out.record.lcc_size = lcc.num_nodes();

    Partition truth_lcc;
    if (truth != nullptr) {
      require(truth->size() == g.num_nodes(), Status::InvalidArgument,
              "truth length must match the graph");
      truth_lcc.k = truth->k;
      truth_lcc.labels.resize(lcc.num_nodes());
      for (int64_t i = 0; i < g.num_nodes(); ++i) {
        if (out.index_map[i] >= 0) truth_lcc.labels[out.index_map[i]] = truth->labels[i];
      }
    }

    if (cfg.k == 1 || lcc.num_nodes() <= 1) {
      out.predicted.k = cfg.k;
      out.predicted.labels.assign(lcc.num_nodes(), 0);
      out.record.eig_converged = true;
    } else {
      int dim = uses_k_minus_1(cfg.method) ? cfg.k - 1 : cfg.k;
      require(dim < lcc.num_nodes(), Status::InvalidArgument,
              "component too small for the requested k");
      Embedding e = embed(lcc, cfg, dim, out.eigenvalues);
      out.record.eig_iterations = e.iterations;
      out.record.eig_converged = e.converged;
      out.record.max_residual = e.residuals.size() ? e.residuals.maxCoeff() : 0.0;

      uint64_t km_seed = Rng::derive(cfg.seed, 2).next_u64();
      KmeansResult km = cluster_embedding(e.vectors, cfg.k, cfg.kmeans, km_seed);
      out.predicted = std::move(km.partition);
      out.record.kmeans_cost = km.cost;
    }

    if (truth != nullptr) {
      out.record.ari = ari(out.predicted, truth_lcc);
      if (out.predicted.k == truth_lcc.k && truth_lcc.k <= 64) {
        out.record.mis_rate = misclustering_rate(out.predicted, truth_lcc).rate;
      }
    }
    out.record.valid = true;
  } catch (const Error& err) {
    out.record.error_code = err.code();
    out.record.error = std::string(status_name(err.code())) + ": " + err.what();
  }
  out.record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace sgc
