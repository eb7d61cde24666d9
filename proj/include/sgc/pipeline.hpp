#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgc/clustering.hpp"
#include "sgc/eigensolve.hpp"
#include "sgc/error.hpp"
#include "sgc/graph.hpp"
#include "sgc/ssbm.hpp"

namespace sgc {

enum class Method {
  Adjacency,            // A, largest-k eigenvectors
  SignedLaplacian,      // Lbar, k-1 smallest
  SymSignedLaplacian,   // Lbar_sym, k-1 smallest
  Sponge,               // SPONGE, combinatorial pencil, k smallest
  SpongeSym,            // SPONGE_sym, k smallest
  BRC,
  BNC,
  SymSignedLaplacianReg,  // Lbar_sym_reg
  SpongeSymReg,           // SPONGE_sym_reg
};

const char* method_name(Method m);
Method method_from_name(const std::string& name);
std::vector<Method> all_methods();

struct PipelineConfig {
  Method method = Method::SpongeSym;
  int k = 2;
  double tau_plus = 1.0;
  double tau_minus = 1.0;
  // Regularized methods fall back to the recommended rules (from the
  // estimated edge density, eta taken as 0) when unset.
  std::optional<double> gamma_plus;
  std::optional<double> gamma_minus;
  // Sparse graphs leave nodes with empty positive or negative neighborhoods
  // even inside the largest component; the SPONGE family runs with
  // pseudo-inverse row normalization by default. Reject turns those rows
  // back into hard IsolatedNode errors.
  ZeroDegreePolicy sponge_zero_degree = ZeroDegreePolicy::PseudoInverse;
  SolveOptions eig;
  KmeansOptions kmeans;
  uint64_t seed = 0;
};

struct TrialRecord {
  bool valid = false;
  Status error_code = Status::Ok;
  std::string error;  // failure reason when !valid, with remediation hint
  double ari = 0.0;
  double mis_rate = -1.0;  // -1 when not computable (k mismatch or no truth)
  double kmeans_cost = 0.0;
  double max_residual = 0.0;
  int eig_iterations = 0;
  bool eig_converged = false;
  int64_t lcc_size = 0;
  double wall_seconds = 0.0;
};

struct PipelineResult {
  TrialRecord record;
  Partition predicted;             // labels over the largest component
  std::vector<int64_t> index_map;  // original node id -> component id, -1 outside
  Eigen::VectorXd eigenvalues;     // of the method's operator/pencil
};

/// One pass of the spectral pipeline: extract the largest component, build
/// the method's operator or pencil, embed, run k-means++, score against the
/// truth when given. Failures (isolated nodes, indefinite pencils) come back
/// as invalid records, never as crashes; solver non-convergence is recorded
/// and clustering proceeds on the best iterate.
PipelineResult run_pipeline(const SignedGraph& g, const Partition* truth,
                            const PipelineConfig& cfg);

}  // namespace sgc
