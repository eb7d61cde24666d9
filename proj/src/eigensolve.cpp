#include "sgc/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {

namespace {

constexpr int64_t kDenseFallback = 100;  // at or below this, use the dense path

Eigen::MatrixXd random_block(int64_t n, int m, Rng& rng) {
  Eigen::MatrixXd x(n, m);
  for (int j = 0; j < m; ++j) {
    for (int64_t i = 0; i < n; ++i) x(i, j) = rng.uniform(-1.0, 1.0);
  }
  return x;
}

// Applies op column-wise; identity when op is null.
Eigen::MatrixXd apply_block(const Operator* op, const Eigen::MatrixXd& x) {
  if (!op) return x;
  Eigen::MatrixXd y(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    op->apply(x.col(j).data(), const_cast<double*>(y.col(j).data()));
  }
  return y;
}

// Modified Gram-Schmidt in the metric-inner-product with one
// reorthogonalization pass. Near-dependent columns are dropped. Returns the
// kept block Q and metric*Q.
struct OrthoResult {
  Eigen::MatrixXd q;
  Eigen::MatrixXd mq;
};

OrthoResult orthonormalize(const Eigen::MatrixXd& cand, const Operator* metric) {
  int64_t n = cand.rows();
  int total = static_cast<int>(cand.cols());
  Eigen::MatrixXd q(n, total), mq(n, total);
  int kept = 0;
  for (int c = 0; c < total; ++c) {
    Eigen::VectorXd v = cand.col(c);
    Eigen::VectorXd mv = metric ? metric->apply(v) : v;
    double initial = std::sqrt(std::max(0.0, v.dot(mv)));
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < kept; ++i) {
        double coef = mq.col(i).dot(v);
        v -= coef * q.col(i);
        mv -= coef * mq.col(i);
      }
    }
    double norm = std::sqrt(std::max(0.0, v.dot(mv)));
    if (norm <= 1e-8 * std::max(initial, 1e-300) || norm <= 1e-14) continue;
    q.col(kept) = v / norm;
    mq.col(kept) = mv / norm;
    ++kept;
  }
  return {q.leftCols(kept), mq.leftCols(kept)};
}

// Sorted Rayleigh-Ritz on an orthonormal-in-metric basis: returns the m
// smallest Ritz pairs of numerator restricted to span(q).
void rayleigh_ritz(const Operator& numerator, const OrthoResult& basis, int m,
                   Eigen::MatrixXd& x, Eigen::MatrixXd& y_tail, Eigen::VectorXd& theta,
                   int x_cols) {
  Eigen::MatrixXd bq = apply_block(&numerator, basis.q);
  Eigen::MatrixXd h = basis.q.transpose() * bq;
  h = 0.5 * (h + h.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  require(es.info() == Eigen::Success, Status::Internal, "Rayleigh-Ritz failed");
  Eigen::MatrixXd y = es.eigenvectors().leftCols(m);
  theta = es.eigenvalues().head(m);
  x = basis.q * y;
  int tail = static_cast<int>(basis.q.cols()) - x_cols;
  if (tail > 0) {
    y_tail = basis.q.rightCols(tail) * y.bottomRows(tail);
  } else {
    y_tail.resize(x.rows(), 0);
  }
}

Embedding dense_pencil_solve(const Pencil& pencil, int k) {
  Eigen::MatrixXd bd = pencil.numerator.dense();
  Eigen::MatrixXd ad = pencil.denominator.dense();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(bd, ad);
  require(es.info() == Eigen::Success, Status::Internal, "dense pencil solve failed");
  Embedding out;
  out.vectors = es.eigenvectors().leftCols(k);
  out.values = es.eigenvalues().head(k);
  out.metric = EmbeddingMetric::PencilDenominator;
  out.residuals.resize(k);
  for (int j = 0; j < k; ++j) {
    out.residuals[j] =
        (bd * out.vectors.col(j) - out.values[j] * (ad * out.vectors.col(j))).norm();
  }
  return out;
}

// Shared LOBPCG loop; denominator == nullptr solves the standard problem.
Embedding lobpcg(const Operator& numerator, const Operator* denominator, int k,
                 const SolveOptions& opts) {
  const int64_t n = numerator.dim();
  require(k >= 1 && k < n, Status::InvalidArgument, "need 1 <= k < n");

  const int pad = static_cast<int>(std::min<int64_t>(4, n - k - 1));
  const int m = k + std::max(0, pad);

  Rng rng = Rng::derive(opts.seed, 0xe16);
  Embedding out;
  out.metric = denominator ? EmbeddingMetric::PencilDenominator : EmbeddingMetric::Identity;

  Eigen::MatrixXd x, p(n, 0), y_tail;
  Eigen::VectorXd theta;
  {
    OrthoResult basis = orthonormalize(random_block(n, m, rng), denominator);
    require(basis.q.cols() == m, Status::Internal, "degenerate random start block");
    rayleigh_ritz(numerator, basis, m, x, y_tail, theta, m);
  }

  int restarts = 0;
  bool drop_p_once = false;
  Eigen::VectorXd res(m);
  for (int it = 1; it <= opts.max_iter; ++it) {
    out.iterations = it;
    Eigen::MatrixXd bx = apply_block(&numerator, x);
    Eigen::MatrixXd ax = apply_block(denominator, x);
    Eigen::MatrixXd r = bx - ax * theta.asDiagonal();
    for (int j = 0; j < m; ++j) res[j] = r.col(j).norm();

    double worst = 0.0;
    bool done = true;
    for (int j = 0; j < k; ++j) {
      double rel = res[j] / std::max(1.0, std::abs(theta[j]));
      worst = std::max(worst, rel);
      if (rel > opts.tol) done = false;
    }
    out.residual_history.push_back(worst);
    if (done) {
      out.converged = true;
      break;
    }
    out.converged = false;

    // Soft locking: converged columns stay in X but stop contributing
    // residual directions.
    std::vector<int> active;
    for (int j = 0; j < m; ++j) {
      if (res[j] / std::max(1.0, std::abs(theta[j])) > opts.tol) active.push_back(j);
    }
    Eigen::MatrixXd w(n, active.size());
    for (size_t t = 0; t < active.size(); ++t) w.col(t) = r.col(active[t]);

    Eigen::MatrixXd cand(n, x.cols() + w.cols() + (drop_p_once ? 0 : p.cols()));
    cand << x, w, (drop_p_once ? Eigen::MatrixXd(n, 0) : p);
    drop_p_once = false;

    OrthoResult basis = orthonormalize(cand, denominator);
    if (basis.q.cols() < m) {
      // Basis collapsed. First retry without the P block, then restart from a
      // fresh random block; give up after three restarts.
      if (p.cols() > 0) {
        drop_p_once = true;
        p.resize(n, 0);
        continue;
      }
      if (++restarts > 3) break;
      OrthoResult fresh = orthonormalize(random_block(n, m, rng), denominator);
      if (fresh.q.cols() < m) break;
      rayleigh_ritz(numerator, fresh, m, x, y_tail, theta, m);
      p.resize(n, 0);
      continue;
    }
    rayleigh_ritz(numerator, basis, m, x, y_tail, theta, static_cast<int>(x.cols()));
    p = y_tail;
  }

  // Final report on the first k columns with true residuals.
  out.vectors = x.leftCols(k);
  out.values = theta.head(k);
  out.residuals.resize(k);
  Eigen::MatrixXd bx = apply_block(&numerator, out.vectors);
  Eigen::MatrixXd ax = apply_block(denominator, out.vectors);
  for (int j = 0; j < k; ++j) {
    out.residuals[j] = (bx.col(j) - out.values[j] * ax.col(j)).norm();
  }
  return out;
}

}  // namespace

Embedding dense_sym_eig(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols(), Status::InvalidArgument, "matrix must be square");
  require(m.rows() <= 2000, Status::GuardExceeded, "dense eig guarded at n <= 2000");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  require(es.info() == Eigen::Success, Status::Internal, "dense eigensolve failed");
  Embedding out;
  out.vectors = es.eigenvectors();
  out.values = es.eigenvalues();
  out.residuals = Eigen::VectorXd::Zero(m.rows());
  return out;
}

Embedding smallest_k(const Operator& op, int k, const SolveOptions& opts) {
  require(k >= 1 && k < op.dim(), Status::InvalidArgument, "need 1 <= k < n");
  if (op.dim() <= kDenseFallback) {
    Embedding full = dense_sym_eig(op.dense());
    Embedding out;
    out.vectors = full.vectors.leftCols(k);
    out.values = full.values.head(k);
    out.residuals.resize(k);
    for (int j = 0; j < k; ++j) {
      out.residuals[j] = (op.apply(out.vectors.col(j)) - out.values[j] * out.vectors.col(j)).norm();
    }
    return out;
  }
  return lobpcg(op, nullptr, k, opts);
}

Embedding smallest_k_generalized(const Pencil& pencil, int k, const SolveOptions& opts) {
  require(k >= 1 && k < pencil.dim(), Status::InvalidArgument, "need 1 <= k < n");
  if (pencil.dim() <= kDenseFallback) return dense_pencil_solve(pencil, k);
  return lobpcg(pencil.numerator, &pencil.denominator, k, opts);
}

double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  require(u.rows() == v.rows() && u.cols() == v.cols(), Status::InvalidArgument,
          "subspace_distance: shape mismatch");
  if (u.cols() == 0) return 0.0;
  double ortho_u = (u.transpose() * u - Eigen::MatrixXd::Identity(u.cols(), u.cols())).norm();
  double ortho_v = (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).norm();
  require(ortho_u < 1e-6 && ortho_v < 1e-6, Status::InvalidArgument,
          "subspace_distance expects orthonormal columns");
  Eigen::MatrixXd resid = v - u * (u.transpose() * v);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(resid);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

}  // namespace sgc
