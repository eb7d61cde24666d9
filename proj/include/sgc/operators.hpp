#pragma once

#include <Eigen/Dense>
#include <memory>

#include "sgc/graph.hpp"

namespace sgc {

enum class OperatorKind {
  SignedLaplacian,
  SymSignedLaplacian,
  RegSymSignedLaplacian,
  Adjacency,
  BRC,
  BNC,
  UnsignedSymLaplacianPlus,
  UnsignedSymLaplacianMinus,
  RegUnsignedSymLaplacianPlus,
  RegUnsignedSymLaplacianMinus,
  SpongeNumerator,
  SpongeDenominator,
};

/// Rows with zero degree in an unregularized normalized operator are a hard
/// error by default. PseudoInverse scales such rows by zero instead (the
/// Moore-Penrose convention); the pipeline opts into it for the SPONGE family
/// on sparse graphs where empty positive/negative neighborhoods are expected.
enum class ZeroDegreePolicy { Reject, PseudoInverse };

/// Implicit symmetric operator over sparse storage:
///   y = diag .* x + mat_coeff * S (A (S x) + rank1 * sum(S x) * 1)
/// with S a diagonal scaling. The rank-one regularization term is never
/// materialized, keeping matvec at O(nnz).
class Operator {
public:
  int64_t dim() const { return n_; }
  OperatorKind kind() const { return kind_; }
  const Regularization& regularization() const { return reg_; }

  /// Embedding metadata: which spectral end the method clusters, and whether
  /// it uses k or k-1 eigenvectors.
  bool embeds_largest() const { return embed_largest_; }
  bool embeds_k_minus_1() const { return embed_k_minus_1_; }

  void apply(const double* x, double* y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// Dense materialization (oracle / test use). Guarded at dim <= 4000.
  Eigen::MatrixXd dense() const;

  /// Same operator with flipped sign, so largest-k problems reuse the
  /// smallest-k solver.
  Operator negated() const;

  /// Crude upper bound on ||M|| from row sums; used to scale tolerances.
  double norm_estimate() const;

  static Operator make(OperatorKind kind, int64_t n, std::shared_ptr<const Csr> mat,
                       Eigen::VectorXd diag, Eigen::VectorXd scale, double mat_coeff,
                       double rank1, Regularization reg);

private:
  int64_t n_ = 0;
  OperatorKind kind_ = OperatorKind::Adjacency;
  std::shared_ptr<const Csr> mat_;  // may be null (pure diagonal + rank-one)
  Eigen::VectorXd diag_;            // empty means zero
  Eigen::VectorXd scale_;           // empty means identity
  double mat_coeff_ = 0.0;
  double rank1_ = 0.0;
  Regularization reg_;
  bool embed_largest_ = false;
  bool embed_k_minus_1_ = false;

  friend Operator with_embedding(Operator op, bool largest, bool k_minus_1);
};

/// L = Dbar - A.
Operator signed_laplacian(const SignedGraph& g);

/// L = I - Dbar^{-1/2} A Dbar^{-1/2}; spectrum in [0, 2].
/// Rejects graphs with an isolated node (dbar = 0).
Operator sym_signed_laplacian(const SignedGraph& g);

/// Symmetric Signed Laplacian of the regularized graph
///   A_gamma = A + (gp - gm)/n 11^T,  Dbar_gamma = Dbar + (gp + gm) I.
/// Reduces exactly to sym_signed_laplacian when gp = gm = 0.
Operator regularized_sym_signed_laplacian(const SignedGraph& g, const Regularization& reg);

/// Normalized Laplacian of one unsigned part (A+ or A-) with optional
/// rank-one regularization gamma/n 11^T.
Operator unsigned_sym_laplacian(std::shared_ptr<const Csr> part, OperatorKind kind,
                                double gamma,
                                ZeroDegreePolicy policy = ZeroDegreePolicy::Reject);

Operator brc_operator(const SignedGraph& g);        // D+ - A
Operator bnc_operator(const SignedGraph& g);        // Dbar^{-1/2} (D+ - A) Dbar^{-1/2}
Operator adjacency_operator(const SignedGraph& g);  // A, clustered by largest-k

/// Symmetric definite pair B v = lambda A v with A = denominator.
struct Pencil {
  Operator numerator;    // L+_{sym,g+} + tau_minus I  (or L+ + tau_minus D-)
  Operator denominator;  // L-_{sym,g-} + tau_plus I   (or L- + tau_plus D+)
  double tau_plus = 0.0;
  double tau_minus = 0.0;

  int64_t dim() const { return numerator.dim(); }
};

/// Pencil (L+_sym + tau_minus I, L-_sym + tau_plus I) on the regularized
/// unsigned parts. Requires tau_plus > 0; definiteness of the denominator is
/// verified with a short Lanczos estimate at construction.
Pencil sponge_sym_pencil(const SignedGraph& g, double tau_plus, double tau_minus,
                         const Regularization& reg = {},
                         ZeroDegreePolicy policy = ZeroDegreePolicy::Reject);

/// Combinatorial pencil (L+ + tau_minus D-, L- + tau_plus D+).
Pencil sponge_pencil(const SignedGraph& g, double tau_plus, double tau_minus);

/// Smallest Ritz value from `steps` Lanczos iterations with a random start;
/// an upper estimate of lambda_min that converges fast for extreme values.
double lanczos_smallest_estimate(const Operator& op, int steps, uint64_t seed);

}  // namespace sgc
