#include "sgc/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {

void Operator::apply(const double* x, double* y) const {
  Eigen::Map<const Eigen::VectorXd> xv(x, n_);
  Eigen::Map<Eigen::VectorXd> yv(y, n_);

  Eigen::VectorXd u = scale_.size() ? Eigen::VectorXd(scale_.cwiseProduct(xv)) : xv;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n_);
  if (mat_ && mat_->nnz() > 0) mat_->multiply(u.data(), v.data());
  if (rank1_ != 0.0) v.array() += rank1_ * u.sum();
  if (scale_.size()) v = scale_.cwiseProduct(v);

  if (diag_.size()) {
    yv = diag_.cwiseProduct(xv) + mat_coeff_ * v;
  } else {
    yv = mat_coeff_ * v;
  }
}

Eigen::VectorXd Operator::apply(const Eigen::VectorXd& x) const {
  require(x.size() == n_, Status::InvalidArgument, "operator/vector dimension mismatch");
  Eigen::VectorXd y(n_);
  apply(x.data(), y.data());
  return y;
}

Eigen::MatrixXd Operator::dense() const {
  require(n_ <= 4000, Status::GuardExceeded, "dense materialization guarded at n <= 4000");
  Eigen::MatrixXd m(n_, n_);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n_);
  Eigen::VectorXd col(n_);
  for (int64_t j = 0; j < n_; ++j) {
    e[j] = 1.0;
    apply(e.data(), col.data());
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

Operator Operator::negated() const {
  Operator out = *this;
  out.mat_coeff_ = -mat_coeff_;
  if (out.diag_.size()) out.diag_ = -out.diag_;
  return out;
}

double Operator::norm_estimate() const {
  // Row-sum bound on each term of the composite.
  double mat_part = 0.0;
  if (mat_) {
    auto sums = mat_->abs_row_sums();
    for (int64_t i = 0; i < n_; ++i) {
      double s = scale_.size() ? scale_[i] * scale_[i] : 1.0;
      mat_part = std::max(mat_part, sums[i] * s);
    }
  }
  double diag_part = diag_.size() ? diag_.cwiseAbs().maxCoeff() : 0.0;
  double rank1_part = 0.0;
  if (rank1_ != 0.0) {
    double smax = scale_.size() ? scale_.cwiseAbs().maxCoeff() : 1.0;
    rank1_part = std::abs(rank1_) * smax * smax * static_cast<double>(n_);
  }
  return diag_part + std::abs(mat_coeff_) * (mat_part + rank1_part);
}

Operator Operator::make(OperatorKind kind, int64_t n, std::shared_ptr<const Csr> mat,
                        Eigen::VectorXd diag, Eigen::VectorXd scale, double mat_coeff,
                        double rank1, Regularization reg) {
  Operator op;
  op.kind_ = kind;
  op.n_ = n;
  op.mat_ = std::move(mat);
  op.diag_ = std::move(diag);
  op.scale_ = std::move(scale);
  op.mat_coeff_ = mat_coeff;
  op.rank1_ = rank1;
  op.reg_ = reg;
  return op;
}

Operator with_embedding(Operator op, bool largest, bool k_minus_1) {
  op.embed_largest_ = largest;
  op.embed_k_minus_1_ = k_minus_1;
  return op;
}

namespace {

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int64_t>(v.size()));
}

// (d + gamma)^{-1/2} entrywise; zero rows follow the policy.
Eigen::VectorXd inv_sqrt_degrees(const Eigen::VectorXd& deg, double gamma,
                                 ZeroDegreePolicy policy, const char* what) {
  Eigen::VectorXd out(deg.size());
  for (int64_t i = 0; i < deg.size(); ++i) {
    double d = deg[i] + gamma;
    if (d <= 0.0) {
      if (policy == ZeroDegreePolicy::Reject) {
        fail(Status::IsolatedNode,
             std::string(what) + ": node " + std::to_string(i) +
                 " has zero degree; extract the largest connected component or "
                 "regularize (gamma > 0)");
      }
      out[i] = 0.0;
    } else {
      out[i] = 1.0 / std::sqrt(d);
    }
  }
  return out;
}

}  // namespace

Operator signed_laplacian(const SignedGraph& g) {
  auto op = Operator::make(OperatorKind::SignedLaplacian, g.num_nodes(), g.adjacency_ptr(),
                           to_vec(g.degrees().dbar), {}, -1.0, 0.0, {});
  return with_embedding(std::move(op), false, true);
}

Operator sym_signed_laplacian(const SignedGraph& g) {
  Eigen::VectorXd scale = inv_sqrt_degrees(to_vec(g.degrees().dbar), 0.0,
                                           ZeroDegreePolicy::Reject, "sym_signed_laplacian");
  auto op = Operator::make(OperatorKind::SymSignedLaplacian, g.num_nodes(),
                           g.adjacency_ptr(), Eigen::VectorXd::Ones(g.num_nodes()),
                           std::move(scale), -1.0, 0.0, {});
  return with_embedding(std::move(op), false, true);
}

Operator regularized_sym_signed_laplacian(const SignedGraph& g, const Regularization& reg) {
  require(reg.gamma_plus >= 0.0 && reg.gamma_minus >= 0.0, Status::InvalidArgument,
          "gamma must be nonnegative");
  int64_t n = g.num_nodes();
  Eigen::VectorXd scale =
      inv_sqrt_degrees(to_vec(g.degrees().dbar), reg.gamma(), ZeroDegreePolicy::Reject,
                       "regularized_sym_signed_laplacian");
  double rank1 = (reg.gamma_plus - reg.gamma_minus) / static_cast<double>(n);
  auto op = Operator::make(OperatorKind::RegSymSignedLaplacian, n, g.adjacency_ptr(),
                           Eigen::VectorXd::Ones(n), std::move(scale), -1.0, rank1, reg);
  return with_embedding(std::move(op), false, true);
}

Operator unsigned_sym_laplacian(std::shared_ptr<const Csr> part, OperatorKind kind,
                                double gamma, ZeroDegreePolicy policy) {
  require(part != nullptr, Status::InvalidArgument, "null matrix");
  require(gamma >= 0.0, Status::InvalidArgument, "gamma must be nonnegative");
  int64_t n = part->n;
  Eigen::VectorXd deg = to_vec(part->abs_row_sums());
  Eigen::VectorXd scale = inv_sqrt_degrees(deg, gamma, policy, "unsigned_sym_laplacian");
  double rank1 = (gamma > 0.0) ? gamma / static_cast<double>(n) : 0.0;
  Regularization reg;
  if (kind == OperatorKind::RegUnsignedSymLaplacianPlus ||
      kind == OperatorKind::UnsignedSymLaplacianPlus) {
    reg.gamma_plus = gamma;
  } else {
    reg.gamma_minus = gamma;
  }
  return Operator::make(kind, n, std::move(part), Eigen::VectorXd::Ones(n),
                        std::move(scale), -1.0, rank1, reg);
}

Operator brc_operator(const SignedGraph& g) {
  auto op = Operator::make(OperatorKind::BRC, g.num_nodes(), g.adjacency_ptr(),
                           to_vec(g.degrees().dplus), {}, -1.0, 0.0, {});
  return with_embedding(std::move(op), false, false);
}

Operator bnc_operator(const SignedGraph& g) {
  int64_t n = g.num_nodes();
  Eigen::VectorXd dbar = to_vec(g.degrees().dbar);
  Eigen::VectorXd scale =
      inv_sqrt_degrees(dbar, 0.0, ZeroDegreePolicy::Reject, "bnc_operator");
  // Dbar^{-1/2} D+ Dbar^{-1/2} collapses to the diagonal d+/dbar.
  Eigen::VectorXd diag(n);
  for (int64_t i = 0; i < n; ++i) diag[i] = g.degrees().dplus[i] / dbar[i];
  auto op = Operator::make(OperatorKind::BNC, n, g.adjacency_ptr(), std::move(diag),
                           std::move(scale), -1.0, 0.0, {});
  return with_embedding(std::move(op), false, false);
}

Operator adjacency_operator(const SignedGraph& g) {
  auto op = Operator::make(OperatorKind::Adjacency, g.num_nodes(), g.adjacency_ptr(), {},
                           {}, 1.0, 0.0, {});
  return with_embedding(std::move(op), true, false);
}

double lanczos_smallest_estimate(const Operator& op, int steps, uint64_t seed) {
  int64_t n = op.dim();
  int m = static_cast<int>(std::min<int64_t>(steps, n));
  if (m <= 0) return 0.0;

  Rng rng = Rng::derive(seed, 0x1a2c);
  Eigen::MatrixXd basis(n, m);
  Eigen::VectorXd alpha(m), beta(m);
  Eigen::VectorXd q(n);
  for (int64_t i = 0; i < n; ++i) q[i] = rng.uniform(-1.0, 1.0);
  q.normalize();

  int built = 0;
  for (int j = 0; j < m; ++j) {
    basis.col(j) = q;
    ++built;
    Eigen::VectorXd w = op.apply(q);
    alpha[j] = q.dot(w);
    // Full reorthogonalization; m is small.
    w -= basis.leftCols(built) * (basis.leftCols(built).transpose() * w);
    w -= basis.leftCols(built) * (basis.leftCols(built).transpose() * w);
    double nw = w.norm();
    if (j + 1 < m) {
      if (nw < 1e-12) break;  // invariant subspace found
      beta[j] = nw;
      q = w / nw;
    }
  }

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
  for (int j = 0; j < built; ++j) {
    tri(j, j) = alpha[j];
    if (j + 1 < built) tri(j, j + 1) = tri(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

namespace {

void check_pencil_definite(const Pencil& pencil) {
  double est = lanczos_smallest_estimate(pencil.denominator, 20, 0x9c11);
  double tol = 1e-10 * std::max(1.0, pencil.denominator.norm_estimate());
  require(est > tol, Status::IndefinitePencil,
          "pencil denominator is not positive definite (Lanczos estimate " +
              std::to_string(est) + ")");
}

}  // namespace

Pencil sponge_sym_pencil(const SignedGraph& g, double tau_plus, double tau_minus,
                         const Regularization& reg, ZeroDegreePolicy policy) {
  require(tau_plus > 0.0, Status::InvalidArgument, "tau_plus must be positive");
  require(tau_minus >= 0.0, Status::InvalidArgument, "tau_minus must be nonnegative");
  int64_t n = g.num_nodes();
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Pencil pencil{
      Operator::make(OperatorKind::SpongeNumerator, n, g.positive(),
                     (1.0 + tau_minus) * ones,
                     inv_sqrt_degrees(to_vec(g.positive()->abs_row_sums()),
                                      reg.gamma_plus, policy, "sponge numerator"),
                     -1.0, reg.gamma_plus > 0.0 ? reg.gamma_plus / n : 0.0,
                     Regularization{reg.gamma_plus, 0.0}),
      Operator::make(OperatorKind::SpongeDenominator, n, g.negative(),
                     (1.0 + tau_plus) * ones,
                     inv_sqrt_degrees(to_vec(g.negative()->abs_row_sums()),
                                      reg.gamma_minus, policy, "sponge denominator"),
                     -1.0, reg.gamma_minus > 0.0 ? reg.gamma_minus / n : 0.0,
                     Regularization{0.0, reg.gamma_minus}),
      tau_plus, tau_minus};
  check_pencil_definite(pencil);
  return pencil;
}

Pencil sponge_pencil(const SignedGraph& g, double tau_plus, double tau_minus) {
  require(tau_plus > 0.0, Status::InvalidArgument, "tau_plus must be positive");
  require(tau_minus >= 0.0, Status::InvalidArgument, "tau_minus must be nonnegative");
  int64_t n = g.num_nodes();
  Eigen::VectorXd dplus = to_vec(g.degrees().dplus);
  Eigen::VectorXd dminus = to_vec(g.degrees().dminus);
  // L+ + tau_minus D- has diagonal d+ + tau_minus d-, off-diagonal -A+.
  Pencil pencil{Operator::make(OperatorKind::SpongeNumerator, n, g.positive(),
                               dplus + tau_minus * dminus, {}, -1.0, 0.0, {}),
                Operator::make(OperatorKind::SpongeDenominator, n, g.negative(),
                               dminus + tau_plus * dplus, {}, -1.0, 0.0, {}),
                tau_plus, tau_minus};
  check_pencil_definite(pencil);
  return pencil;
}

}  // namespace sgc
