#pragma once

#include <Eigen/Dense>

#include "sgc/graph.hpp"
#include "sgc/ssbm.hpp"

namespace sgc {

/// k x k blocks of the population SPONGE operator. With block-contiguous
/// nodes the expected operator is block-diagonalized by [Theta, Vperp]; the
/// informative part is (Cminus)^{-1/2} Cplus (Cminus)^{-1/2}.
struct SpongeBlocks {
  Eigen::MatrixXd cplus;       // k x k
  Eigen::MatrixXd cminus;      // k x k, positive definite with lambda_min >= tau_plus
  Eigen::VectorXd alpha_plus;  // 1 + tau_minus + p(1-eta)/d+_i
  Eigen::VectorXd alpha_minus; // 1 + tau_plus + p eta/d-_i
  Eigen::VectorXd dplus;       // expected positive degree per cluster
  Eigen::VectorXd dminus;
  double tau_plus = 0.0;
  double tau_minus = 0.0;

  /// Eigen-decomposition (Cminus)^{-1/2} Cplus (Cminus)^{-1/2} = R Lambda R^T,
  /// ascending.
  void core_eig(Eigen::MatrixXd& rotation, Eigen::VectorXd& lambda) const;
};

/// k x k blocks of the population symmetric Signed Laplacian: spectrum is
/// spec(Cbar) together with alpha_bar at multiplicity n - k.
struct LaplacianBlocks {
  Eigen::MatrixXd cbar;  // k x k
  Eigen::MatrixXd bbar;  // k x k
  double alpha_bar = 0.0;

  /// Cbar = R Lambda R^T ascending; r_k_minus_1 holds the k-1 smallest
  /// eigenvectors.
  void eig(Eigen::MatrixXd& rotation, Eigen::VectorXd& lambda) const;
  Eigen::MatrixXd r_k_minus_1() const;
};

SpongeBlocks expected_sponge_blocks(const SsbmParams& params, double tau_plus,
                                    double tau_minus);
LaplacianBlocks expected_laplacian_blocks(const SsbmParams& params);

/// Population operators, dense (oracle use).
Eigen::MatrixXd expected_sym_signed_laplacian(const SsbmParams& params);
Eigen::MatrixXd expected_unsigned_adjacency(const SsbmParams& params, bool positive);
Eigen::MatrixXd expected_unsigned_sym_laplacian(const SsbmParams& params, bool positive);
Eigen::MatrixXd expected_sponge_t(const SsbmParams& params, double tau_plus,
                                  double tau_minus);

/// Reassembles dense T-bar from the blocks (the block identity).
Eigen::MatrixXd sponge_t_from_blocks(const SpongeBlocks& blocks, const SsbmParams& params);

/// Population embeddings with k distinct rows.
Eigen::MatrixXd expected_sponge_embedding(const SpongeBlocks& blocks,
                                          const SsbmParams& params);  // Theta (C-)^{-1/2} R
Eigen::MatrixXd expected_laplacian_embedding(const LaplacianBlocks& blocks,
                                             const SsbmParams& params);  // Theta R_{k-1}

/// Equal sizes only: gap = (2 n p / (k dbar)) (1 - 2 eta).
double eigengap_equal(const SsbmParams& params);

struct GapBound {
  double bound = 0.0;  // (1 - 2 eta) / k
  bool rho_condition_met = false;
  double rho_threshold = 0.0;  // smallest sqrt(rho) the bound needs
};
GapBound eigengap_lower_bound(const SsbmParams& params);

/// Closed-form spectra of the equal-size SPONGE blocks (both diagonalized by
/// the same rotation): first entry is the chi_1 eigenvalue, second the
/// (k-1)-fold one.
struct EqualSpongeSpectra {
  double sigma_plus_head, sigma_plus_rest;
  double sigma_minus_head, sigma_minus_rest;
};
EqualSpongeSpectra equal_size_sponge_spectra(const SsbmParams& params, double tau_plus,
                                             double tau_minus);

enum class TauCase { Case1, Case2, Inadmissible };

struct TauVerdict {
  TauCase verdict = TauCase::Inadmissible;
  double beta = 0.0;
  bool n_condition_met = false;
  double tau_plus_min = 0.0;   // for the reported beta
  double tau_minus_max = 0.0;  // for the reported beta
};

/// Sufficient conditions for V_k = Theta R on the population SPONGE operator.
/// Case 2 (beta = 1/2, low noise) is tried first, then case 1 with
/// beta = 4 eta / (s(1-2 eta) + 4 eta).
TauVerdict sponge_tau_admissible(const SsbmParams& params, double tau_plus,
                                 double tau_minus);

struct RegRecommendation {
  double gamma_laplacian = 0.0;     // dbar^{7/8}
  double gamma_lap_plus = 0.0;      // even split of the above
  double gamma_lap_minus = 0.0;
  double gamma_sponge = 0.0;        // (n p (1-eta))^{6/7}, per side
  double p_used = 0.0;
};

RegRecommendation recommended_regularization(const SsbmParams& params);

/// Same rules with p replaced by the edge-density estimate
/// p_hat = 2/(n(n-1)) sum_{i<j} |A_ij|.
RegRecommendation recommended_regularization(const SignedGraph& g, double eta);
double estimate_edge_probability(const SignedGraph& g);

struct MisclusterBounds {
  double sponge_bound = 0.0;        // delta^2 (64+32 xi) k (tau+ + 2/(1-l)) ((tau+)^3+1)/(tau+)^4
  double laplacian_bound = 0.0;     // 96 (2+xi) (k-1) delta^2
  double sponge_delta_threshold = 0.0;   // below this the permutation clause applies
  double laplacian_delta_limit = 0.0;    // delta domain of the Laplacian theorem
};
MisclusterBounds misclustering_bounds(double delta, double xi, int k, double tau_plus,
                                      double l);

struct RowSeparation {
  double min_row_distance = 0.0;        // between rows of R_{k-1}
  double min_scaled_sq_distance = 0.0;  // between rows of Delta^{-1} R_{k-1}
  double scaled_sq_bound = 0.0;         // 2 / (3 min_i n_i)
  bool condition_met = false;           // rho condition; bounds guaranteed only then
};
RowSeparation check_row_separation(const SsbmParams& params);

struct DensityThresholds {
  double dense_p = 0.0;   // (2 C k / (delta (1-2 eta)))^2 ln(n)/n, C = 43
  double sparse_p = 0.0;  // (2 k C4 / (delta (1-2 eta)))^8 * 2/n
  double c_dense = 43.0;
  double c4 = 0.0;  // 128 C r^2 + 1 with C taken at 1
  double r = 1.0;
};
DensityThresholds dense_density_condition(const SsbmParams& params, double delta,
                                          double r = 1.0);

}  // namespace sgc
