#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sgc/operators.hpp"

namespace sgc {

enum class EmbeddingMetric { Identity, PencilDenominator };

/// Eigenvector block with its eigenvalues. Columns are orthonormal in the
/// recorded metric (V^T V = I, or V^T A V = I for pencils).
struct Embedding {
  Eigen::MatrixXd vectors;    // n x m
  Eigen::VectorXd values;     // ascending
  Eigen::VectorXd residuals;  // ||M v - lambda v|| (or ||B v - lambda A v||)
  int iterations = 0;
  bool converged = true;
  EmbeddingMetric metric = EmbeddingMetric::Identity;
  std::vector<double> residual_history;  // max residual over requested columns
};

struct SolveOptions {
  double tol = 1e-8;  // relative: converge when ||r|| <= tol * max(1, |lambda|)
  int max_iter = 500;
  uint64_t seed = 0;
};

/// Full dense eigendecomposition, ascending. Guarded at n <= 2000.
Embedding dense_sym_eig(const Eigen::MatrixXd& m);

/// k smallest eigenpairs of a symmetric operator. Block Rayleigh-Ritz over
/// the LOBPCG three-term subspace [X, R, P]; no preconditioner. Falls back to
/// the dense path for small problems. Non-convergence returns the best
/// iterate with converged = false.
Embedding smallest_k(const Operator& op, int k, const SolveOptions& opts);

/// k smallest generalized eigenpairs of the symmetric definite pencil;
/// columns come back denominator-orthonormal. Basis breakdown triggers up to
/// three random restarts before giving up with converged = false.
Embedding smallest_k_generalized(const Pencil& pencil, int k, const SolveOptions& opts);

/// sin of the largest principal angle: ||(I - U U^T) V||_2, in [0, 1].
double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

}  // namespace sgc
