#include "sgc/theory.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sgc/error.hpp"

namespace sgc {

namespace {

Eigen::MatrixXd inv_sqrt_spd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  require(es.info() == Eigen::Success, Status::Internal, "eig failed");
  require(es.eigenvalues().minCoeff() > 0.0, Status::InvalidArgument,
          "matrix is not positive definite");
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

// Normalized membership matrix Theta (n x k): column i is the indicator of
// cluster i scaled by 1/sqrt(n_i).
Eigen::MatrixXd theta_matrix(const SsbmParams& params) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(params.n, params.k);
  int64_t at = 0;
  for (int32_t c = 0; c < params.k; ++c) {
    double v = 1.0 / std::sqrt(static_cast<double>(params.sizes[c]));
    for (int64_t t = 0; t < params.sizes[c]; ++t) theta(at++, c) = v;
  }
  return theta;
}

}  // namespace

void SpongeBlocks::core_eig(Eigen::MatrixXd& rotation, Eigen::VectorXd& lambda) const {
  Eigen::MatrixXd w = inv_sqrt_spd(cminus);
  Eigen::MatrixXd core = w * cplus * w;
  core = 0.5 * (core + core.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(core);
  rotation = es.eigenvectors();
  lambda = es.eigenvalues();
}

void LaplacianBlocks::eig(Eigen::MatrixXd& rotation, Eigen::VectorXd& lambda) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cbar);
  rotation = es.eigenvectors();
  lambda = es.eigenvalues();
}

Eigen::MatrixXd LaplacianBlocks::r_k_minus_1() const {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd lambda;
  eig(rotation, lambda);
  return rotation.leftCols(rotation.cols() - 1);
}

SpongeBlocks expected_sponge_blocks(const SsbmParams& params, double tau_plus,
                                    double tau_minus) {
  params.validate();
  require(tau_plus > 0.0, Status::InvalidArgument, "tau_plus must be positive");
  require(tau_minus >= 0.0, Status::InvalidArgument, "tau_minus must be nonnegative");

  const int k = params.k;
  const double n = static_cast<double>(params.n);
  const double p = params.p;
  const double eta = params.eta;

  SpongeBlocks out;
  out.tau_plus = tau_plus;
  out.tau_minus = tau_minus;
  out.dplus.resize(k);
  out.dminus.resize(k);
  out.alpha_plus.resize(k);
  out.alpha_minus.resize(k);
  Eigen::VectorXd uplus(k), uminus(k);
  for (int i = 0; i < k; ++i) {
    double si = static_cast<double>(params.sizes[i]) / n;
    out.dplus[i] = p * (n * (si * (1.0 - 2.0 * eta) + eta) - (1.0 - eta));
    out.dminus[i] = p * (n * (-si * (1.0 - 2.0 * eta) + (1.0 - eta)) - eta);
    require(out.dplus[i] > 0.0 && out.dminus[i] > 0.0, Status::InvalidArgument,
            "expected cluster degrees must be positive (params outside model validity)");
    uplus[i] = std::sqrt(static_cast<double>(params.sizes[i]) / out.dplus[i]);
    uminus[i] = std::sqrt(static_cast<double>(params.sizes[i]) / out.dminus[i]);
    out.alpha_plus[i] = 1.0 + tau_minus + p * (1.0 - eta) / out.dplus[i];
    out.alpha_minus[i] = 1.0 + tau_plus + p * eta / out.dminus[i];
  }

  out.cplus = -p * eta * uplus * uplus.transpose();
  out.cminus = -p * (1.0 - eta) * uminus * uminus.transpose();
  for (int i = 0; i < k; ++i) {
    double ni = static_cast<double>(params.sizes[i]);
    out.cplus(i, i) += 1.0 + tau_minus +
                       p / out.dplus[i] * (1.0 - eta - ni * (1.0 - 2.0 * eta));
    out.cminus(i, i) += 1.0 + tau_plus +
                        p / out.dminus[i] * (eta + ni * (1.0 - 2.0 * eta));
  }
  return out;
}

LaplacianBlocks expected_laplacian_blocks(const SsbmParams& params) {
  params.validate();
  require(params.p > 0.0, Status::InvalidArgument, "p must be positive");
  const int k = params.k;
  const double p = params.p;
  const double dbar = params.dbar();
  const double f = 1.0 - 2.0 * params.eta;

  LaplacianBlocks out;
  out.alpha_bar = 1.0 + p * f / dbar;
  out.bbar.resize(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double nij = std::sqrt(static_cast<double>(params.sizes[i]) *
                             static_cast<double>(params.sizes[j]));
      out.bbar(i, j) = (i == j ? 1.0 : -1.0) * nij * p * f / dbar;
    }
  }
  out.cbar = out.alpha_bar * Eigen::MatrixXd::Identity(k, k) - out.bbar;
  return out;
}

Eigen::MatrixXd expected_sym_signed_laplacian(const SsbmParams& params) {
  require(params.p > 0.0, Status::InvalidArgument, "p must be positive");
  Eigen::MatrixXd ea = ssbm_expected_adjacency(params);
  return Eigen::MatrixXd::Identity(params.n, params.n) - ea / params.dbar();
}

Eigen::MatrixXd expected_unsigned_adjacency(const SsbmParams& params, bool positive) {
  params.validate();
  require(params.n <= 5000, Status::GuardExceeded, "dense guard at n <= 5000");
  Partition truth = ground_truth_partition(params);
  const double p = params.p;
  const double eta = params.eta;
  Eigen::MatrixXd m(params.n, params.n);
  for (int64_t i = 0; i < params.n; ++i) {
    for (int64_t j = 0; j < params.n; ++j) {
      if (i == j) {
        m(i, j) = 0.0;
        continue;
      }
      bool same = truth.labels[i] == truth.labels[j];
      double within = positive ? p * (1.0 - eta) : p * eta;
      double across = positive ? p * eta : p * (1.0 - eta);
      m(i, j) = same ? within : across;
    }
  }
  return m;
}

Eigen::MatrixXd expected_unsigned_sym_laplacian(const SsbmParams& params, bool positive) {
  Eigen::MatrixXd ea = expected_unsigned_adjacency(params, positive);
  Eigen::VectorXd deg = ea.rowwise().sum();
  require(deg.minCoeff() > 0.0, Status::InvalidArgument,
          "expected degrees must be positive");
  Eigen::VectorXd s = deg.cwiseSqrt().cwiseInverse();
  return Eigen::MatrixXd::Identity(params.n, params.n) -
         s.asDiagonal() * ea * s.asDiagonal();
}

Eigen::MatrixXd expected_sponge_t(const SsbmParams& params, double tau_plus,
                                  double tau_minus) {
  Eigen::MatrixXd lp = expected_unsigned_sym_laplacian(params, true);
  Eigen::MatrixXd lm = expected_unsigned_sym_laplacian(params, false);
  int64_t n = params.n;
  lp += tau_minus * Eigen::MatrixXd::Identity(n, n);
  lm += tau_plus * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd w = inv_sqrt_spd(lm);
  Eigen::MatrixXd t = w * lp * w;
  return 0.5 * (t + t.transpose());
}

Eigen::MatrixXd sponge_t_from_blocks(const SpongeBlocks& blocks, const SsbmParams& params) {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd lambda;
  blocks.core_eig(rotation, lambda);
  Eigen::MatrixXd theta = theta_matrix(params);
  Eigen::MatrixXd theta_r = theta * rotation;

  // Theta R Lambda (Theta R)^T plus the alpha ratio on each within-cluster
  // complement E_i - theta_i theta_i^T.
  Eigen::MatrixXd t = theta_r * lambda.asDiagonal() * theta_r.transpose();
  int64_t at = 0;
  for (int32_t c = 0; c < params.k; ++c) {
    double ratio = blocks.alpha_plus[c] / blocks.alpha_minus[c];
    int64_t sz = params.sizes[c];
    Eigen::MatrixXd block = Eigen::MatrixXd::Identity(sz, sz);
    block -= Eigen::MatrixXd::Constant(sz, sz, 1.0 / static_cast<double>(sz));
    t.block(at, at, sz, sz) += ratio * block;
    at += sz;
  }
  return t;
}

Eigen::MatrixXd expected_sponge_embedding(const SpongeBlocks& blocks,
                                          const SsbmParams& params) {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd lambda;
  blocks.core_eig(rotation, lambda);
  return theta_matrix(params) * inv_sqrt_spd(blocks.cminus) * rotation;
}

Eigen::MatrixXd expected_laplacian_embedding(const LaplacianBlocks& blocks,
                                             const SsbmParams& params) {
  return theta_matrix(params) * blocks.r_k_minus_1();
}

double eigengap_equal(const SsbmParams& params) {
  params.validate();
  for (int64_t sz : params.sizes) {
    require(sz == params.sizes[0], Status::InvalidArgument,
            "eigengap_equal needs equal cluster sizes");
  }
  require(params.p > 0.0, Status::InvalidArgument, "p must be positive");
  double n = static_cast<double>(params.n);
  return 2.0 * n * params.p * (1.0 - 2.0 * params.eta) /
         (static_cast<double>(params.k) * params.dbar());
}

GapBound eigengap_lower_bound(const SsbmParams& params) {
  params.validate();
  GapBound out;
  double k = static_cast<double>(params.k);
  out.bound = (1.0 - 2.0 * params.eta) / k;
  out.rho_threshold = 1.0 - 1.0 / (4.0 * k * (2.0 + std::sqrt(k)));
  out.rho_condition_met = std::sqrt(params.rho()) > out.rho_threshold;
  return out;
}

EqualSpongeSpectra equal_size_sponge_spectra(const SsbmParams& params, double tau_plus,
                                             double tau_minus) {
  params.validate();
  for (int64_t sz : params.sizes) {
    require(sz == params.sizes[0], Status::InvalidArgument,
            "equal-size spectra need equal cluster sizes");
  }
  SpongeBlocks blocks = expected_sponge_blocks(params, tau_plus, tau_minus);
  const double n = static_cast<double>(params.n);
  const double k = static_cast<double>(params.k);
  const double p = params.p;
  const double eta = params.eta;
  const double dp = blocks.dplus[0];
  const double dm = blocks.dminus[0];
  EqualSpongeSpectra out;
  out.sigma_plus_head =
      1.0 + tau_minus + p / dp * (1.0 - eta - n * (eta + (1.0 - 2.0 * eta) / k));
  out.sigma_plus_rest = 1.0 + tau_minus + p / dp * (1.0 - eta - n * (1.0 - 2.0 * eta) / k);
  out.sigma_minus_head =
      1.0 + tau_plus + p / dm * (eta - n * (1.0 - eta - (1.0 - 2.0 * eta) / k));
  out.sigma_minus_rest = 1.0 + tau_plus + p / dm * (eta + n * (1.0 - 2.0 * eta) / k);
  return out;
}

TauVerdict sponge_tau_admissible(const SsbmParams& params, double tau_plus,
                                 double tau_minus) {
  params.validate();
  require(tau_plus > 0.0, Status::InvalidArgument, "tau_plus must be positive");
  require(tau_minus >= 0.0, Status::InvalidArgument, "tau_minus must be nonnegative");
  const double s = params.s();
  const double l = params.l();
  const double eta = params.eta;
  const double f = 1.0 - 2.0 * eta;
  const double n = static_cast<double>(params.n);

  TauVerdict out;
  out.n_condition_met =
      n >= std::max(2.0 * (1.0 - eta) / (s * f), 2.0 * eta / ((1.0 - l) * (1.0 - eta)));

  auto check = [&](double beta) -> bool {
    double tau_plus_min = 16.0 * eta / (beta * s * f);
    double cap = (beta < 1.0) ? 1.0 / (4.0 * (1.0 - beta)) : tau_plus / 8.0;
    double tau_minus_max =
        0.5 * beta * (s * f / (s * f + 2.0 * eta)) * std::min(cap, tau_plus / 8.0);
    out.beta = beta;
    out.tau_plus_min = tau_plus_min;
    out.tau_minus_max = tau_minus_max;
    return tau_plus > tau_plus_min && tau_minus < tau_minus_max;
  };

  // Case 2 first: beta = 1/2 allows the wider tau_minus range at low noise.
  if (eta <= s / (2.0 * s + 4.0) && check(0.5)) {
    out.verdict = out.n_condition_met ? TauCase::Case2 : TauCase::Inadmissible;
    return out;
  }
  if (eta > 0.0 && check(4.0 * eta / (s * f + 4.0 * eta))) {
    out.verdict = out.n_condition_met ? TauCase::Case1 : TauCase::Inadmissible;
    return out;
  }
  out.verdict = TauCase::Inadmissible;
  return out;
}

double estimate_edge_probability(const SignedGraph& g) {
  int64_t n = g.num_nodes();
  require(n >= 2, Status::InvalidArgument, "need at least two nodes");
  double total = 0.0;
  for (const auto& e : g.to_edges()) total += std::abs(e.w);
  return 2.0 * total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

RegRecommendation regularization_rules(double n, double p, double eta) {
  RegRecommendation out;
  out.p_used = p;
  double dbar = p * (n - 1.0);
  out.gamma_laplacian = std::pow(std::max(dbar, 0.0), 7.0 / 8.0);
  out.gamma_lap_plus = 0.5 * out.gamma_laplacian;
  out.gamma_lap_minus = 0.5 * out.gamma_laplacian;
  out.gamma_sponge = std::pow(std::max(n * p * (1.0 - eta), 0.0), 6.0 / 7.0);
  return out;
}

}  // namespace

RegRecommendation recommended_regularization(const SsbmParams& params) {
  params.validate();
  require(params.p > 0.0, Status::InvalidArgument, "p must be positive");
  return regularization_rules(static_cast<double>(params.n), params.p, params.eta);
}

RegRecommendation recommended_regularization(const SignedGraph& g, double eta) {
  require(eta >= 0.0 && eta < 0.5, Status::InvalidArgument, "eta must be in [0, 1/2)");
  double p_hat = estimate_edge_probability(g);
  return regularization_rules(static_cast<double>(g.num_nodes()), p_hat, eta);
}

MisclusterBounds misclustering_bounds(double delta, double xi, int k, double tau_plus,
                                      double l) {
  require(delta > 0.0 && delta < 1.0, Status::InvalidArgument, "delta must be in (0, 1)");
  require(xi >= 0.0, Status::InvalidArgument, "xi must be nonnegative");
  require(k >= 2, Status::InvalidArgument, "k must be at least 2");
  require(tau_plus > 0.0, Status::InvalidArgument, "tau_plus must be positive");
  require(l > 0.0 && l < 1.0, Status::InvalidArgument, "l must be in (0, 1)");

  MisclusterBounds out;
  double kk = static_cast<double>(k);
  double t = tau_plus;
  double shape = (kk * (t + 2.0 / (1.0 - l)) * (t * t * t + 1.0)) / (t * t * t * t);
  out.sponge_bound = delta * delta * (64.0 + 32.0 * xi) * shape;
  out.laplacian_bound = 96.0 * (2.0 + xi) * (kk - 1.0) * delta * delta;
  out.sponge_delta_threshold =
      (t * t) / std::sqrt((64.0 + 32.0 * xi) * kk * (t + 2.0 / (1.0 - l)) *
                          (t * t * t + 1.0));
  out.laplacian_delta_limit = std::sqrt(1.0 / (12.0 * (16.0 + 8.0 * xi) * (kk - 1.0)));
  return out;
}

RowSeparation check_row_separation(const SsbmParams& params) {
  params.validate();
  LaplacianBlocks blocks = expected_laplacian_blocks(params);
  Eigen::MatrixXd r = blocks.r_k_minus_1();

  RowSeparation out;
  out.condition_met = eigengap_lower_bound(params).rho_condition_met;
  out.min_row_distance = std::numeric_limits<double>::infinity();
  out.min_scaled_sq_distance = std::numeric_limits<double>::infinity();
  int64_t min_size = *std::min_element(params.sizes.begin(), params.sizes.end());
  out.scaled_sq_bound = 2.0 / (3.0 * static_cast<double>(min_size));
  for (int i = 0; i < params.k; ++i) {
    for (int j = i + 1; j < params.k; ++j) {
      double d = (r.row(i) - r.row(j)).norm();
      out.min_row_distance = std::min(out.min_row_distance, d);
      double ni = static_cast<double>(params.sizes[i]);
      double nj = static_cast<double>(params.sizes[j]);
      double ds = (r.row(i) / std::sqrt(ni) - r.row(j) / std::sqrt(nj)).squaredNorm();
      out.min_scaled_sq_distance = std::min(out.min_scaled_sq_distance, ds);
    }
  }
  return out;
}

DensityThresholds dense_density_condition(const SsbmParams& params, double delta, double r) {
  params.validate();
  require(delta > 0.0 && delta < 0.5, Status::InvalidArgument, "delta must be in (0, 1/2)");
  require(r >= 1.0, Status::InvalidArgument, "r must be at least 1");
  DensityThresholds out;
  out.r = r;
  out.c4 = 128.0 * r * r + 1.0;  // concentration constant taken at 1
  double k = static_cast<double>(params.k);
  double n = static_cast<double>(params.n);
  double f = 1.0 - 2.0 * params.eta;
  out.dense_p = std::pow(2.0 * out.c_dense * k / (delta * f), 2.0) * std::log(n) / n;
  out.sparse_p = std::pow(2.0 * k * out.c4 / (delta * f), 8.0) * 2.0 / n;
  return out;
}

}  // namespace sgc
