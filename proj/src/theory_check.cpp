#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sgc/clustering.hpp"
#include "sgc/experiments.hpp"
#include "sgc/metrics.hpp"
#include "sgc/rng.hpp"
#include "sgc/theory.hpp"
#include "sgc/version.hpp"

namespace sgc {

using nlohmann::json;

namespace {

SsbmParams draw_params(Rng& rng, int64_t n_max, bool equal_sizes) {
  int64_t n = 120 + static_cast<int64_t>(rng.below(std::max<int64_t>(1, n_max - 120)));
  int32_t k = 2 + static_cast<int32_t>(rng.below(4));
  double p = 0.05 + 0.25 * rng.uniform01();
  double eta = 0.4 * rng.uniform01();
  if (equal_sizes) {
    n -= n % k;
    return SsbmParams::with_equal_sizes(n, k, p, eta);
  }
  double rho = 0.3 + 0.7 * rng.uniform01();
  return SsbmParams::with_sizes(sizes_from_rho(n, k, rho, rng.next_u64()), p, eta);
}

// Slightly unequal sizes (one node moved) with k small enough that the
// aspect-ratio condition sqrt(rho) > 1 - 1/(4k(2+sqrt k)) still holds.
SsbmParams draw_params_near_equal(Rng& rng, int64_t n_max) {
  int32_t k = 2 + static_cast<int32_t>(rng.below(2));
  int64_t n = std::max<int64_t>(160, n_max - static_cast<int64_t>(rng.below(60)));
  n -= n % k;
  std::vector<int64_t> sizes(k, n / k);
  sizes.front() -= 1;
  sizes.back() += 1;
  double p = 0.05 + 0.25 * rng.uniform01();
  double eta = 0.4 * rng.uniform01();
  return SsbmParams::with_sizes(std::move(sizes), p, eta);
}

json check_entry(const std::string& name, int draws, double measured, double tolerance,
                 bool pass) {
  return json{{"name", name},
              {"draws", draws},
              {"measured", measured},
              {"tolerance", tolerance},
              {"pass", pass}};
}

}  // namespace

json theory_check(uint64_t seed, int draws, int64_t n_max) {
  Rng rng = Rng::derive(seed, 0x7c4e);
  json checks = json::array();

  {
    // Spectrum of the population Signed Laplacian equals spec(Cbar) plus
    // alpha_bar at multiplicity n - k.
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
      SsbmParams params = draw_params(rng, n_max, false);
      auto blocks = expected_laplacian_blocks(params);
      Eigen::MatrixXd rot;
      Eigen::VectorXd clam;
      blocks.eig(rot, clam);
      std::vector<double> want(clam.data(), clam.data() + clam.size());
      for (int64_t i = 0; i < params.n - params.k; ++i) want.push_back(blocks.alpha_bar);
      std::sort(want.begin(), want.end());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          expected_sym_signed_laplacian(params), Eigen::EigenvaluesOnly);
      for (int64_t i = 0; i < params.n; ++i) {
        worst = std::max(worst, std::abs(es.eigenvalues()[i] - want[i]));
      }
    }
    checks.push_back(
        check_entry("laplacian_spectrum_identity", draws, worst, 1e-9, worst <= 1e-9));
  }

  {
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
      SsbmParams params = draw_params(rng, std::min<int64_t>(n_max, 400), false);
      double tp = 0.5 + 2.0 * rng.uniform01();
      double tm = 0.5 * rng.uniform01();
      auto blocks = expected_sponge_blocks(params, tp, tm);
      Eigen::MatrixXd assembled = sponge_t_from_blocks(blocks, params);
      Eigen::MatrixXd direct = expected_sponge_t(params, tp, tm);
      worst = std::max(worst, (assembled - direct).cwiseAbs().maxCoeff());
    }
    checks.push_back(
        check_entry("sponge_block_assembly", draws, worst, 1e-9, worst <= 1e-9));
  }

  {
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
      SsbmParams params = draw_params(rng, n_max, true);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          expected_sym_signed_laplacian(params), Eigen::EigenvaluesOnly);
      double dense_gap =
          es.eigenvalues()[params.k - 1] - es.eigenvalues()[params.k - 2];
      worst = std::max(worst, std::abs(dense_gap - eigengap_equal(params)));
    }
    checks.push_back(
        check_entry("equal_size_eigengap_formula", draws, worst, 1e-10, worst <= 1e-10));
  }

  {
    // General lower bound holds whenever the aspect-ratio condition does.
    double min_margin = 1e300;
    int used = 0;
    for (int d = 0; d < draws * 4 && used < draws; ++d) {
      SsbmParams params =
          d % 2 == 0 ? draw_params(rng, n_max, true) : draw_params_near_equal(rng, n_max);
      auto gb = eigengap_lower_bound(params);
      if (!gb.rho_condition_met) continue;
      ++used;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          expected_sym_signed_laplacian(params), Eigen::EigenvaluesOnly);
      double dense_gap =
          es.eigenvalues()[params.k - 1] - es.eigenvalues()[params.k - 2];
      min_margin = std::min(min_margin, dense_gap - gb.bound);
    }
    checks.push_back(check_entry("eigengap_lower_bound", used, min_margin, 0.0,
                                 used > 0 && min_margin >= -1e-12));
  }

  {
    // Equal sizes: the two closed-form block ratios are eigenvalues of the
    // population SPONGE operator.
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
      SsbmParams params = draw_params(rng, std::min<int64_t>(n_max, 400), true);
      double tp = 0.5 + 2.0 * rng.uniform01();
      double tm = 0.3 * rng.uniform01();
      auto spectra = equal_size_sponge_spectra(params, tp, tm);
      auto blocks = expected_sponge_blocks(params, tp, tm);
      Eigen::MatrixXd rot;
      Eigen::VectorXd lambda;
      blocks.core_eig(rot, lambda);
      std::vector<double> want = {spectra.sigma_plus_head / spectra.sigma_minus_head};
      for (int i = 1; i < params.k; ++i) {
        want.push_back(spectra.sigma_plus_rest / spectra.sigma_minus_rest);
      }
      std::sort(want.begin(), want.end());
      for (int i = 0; i < params.k; ++i) {
        worst = std::max(worst, std::abs(lambda[i] - want[i]));
      }
    }
    checks.push_back(
        check_entry("equal_size_sponge_closed_forms", draws, worst, 1e-9, worst <= 1e-9));
  }

  {
    bool pass = true;
    double min_seen = 1e300;
    int used = 0;
    for (int d = 0; d < draws * 4 && used < draws; ++d) {
      SsbmParams params = draw_params_near_equal(rng, n_max);
      auto rs = check_row_separation(params);
      if (!rs.condition_met) continue;
      ++used;
      min_seen = std::min(min_seen, rs.min_row_distance);
      pass = pass && rs.min_row_distance >= 1.0 - 1e-10 &&
             rs.min_scaled_sq_distance >= rs.scaled_sq_bound - 1e-12;
    }
    checks.push_back(
        check_entry("row_separation_bounds", used, min_seen, 1.0, used > 0 && pass));
  }

  {
    // k-means++ on the population embeddings recovers the planted partition.
    bool pass = true;
    for (int d = 0; d < draws; ++d) {
      SsbmParams params = draw_params(rng, std::min<int64_t>(n_max, 300), false);
      Partition truth = ground_truth_partition(params);
      auto blocks = expected_sponge_blocks(params, 1.0 + rng.uniform01(), 0.1);
      auto res = cluster_embedding(expected_sponge_embedding(blocks, params), params.k,
                                   {}, rng.next_u64());
      pass = pass && misclustering_rate(res.partition, truth).rate == 0.0;
      auto lap = expected_laplacian_blocks(params);
      auto res2 = cluster_embedding(expected_laplacian_embedding(lap, params), params.k,
                                    {}, rng.next_u64());
      pass = pass && misclustering_rate(res2.partition, truth).rate == 0.0;
    }
    checks.push_back(
        check_entry("population_embedding_recovery", draws, pass ? 0.0 : 1.0, 0.0, pass));
  }

  {
    // Admissible (tau+, tau-) puts the k block eigenvalues strictly below
    // the alpha ratios.
    bool pass = true;
    int used = 0;
    for (int d = 0; d < draws * 4 && used < draws; ++d) {
      SsbmParams params = draw_params(rng, std::min<int64_t>(n_max, 400), d % 2 == 0);
      double tp = 30.0, tm = 1e-4;
      auto verdict = sponge_tau_admissible(params, tp, tm);
      if (verdict.verdict == TauCase::Inadmissible) continue;
      ++used;
      auto blocks = expected_sponge_blocks(params, tp, tm);
      Eigen::MatrixXd rot;
      Eigen::VectorXd lambda;
      blocks.core_eig(rot, lambda);
      double ratio_min =
          (blocks.alpha_plus.array() / blocks.alpha_minus.array()).minCoeff();
      pass = pass && lambda.maxCoeff() < ratio_min;
    }
    checks.push_back(check_entry("tau_admissible_embedding_order", used,
                                 pass ? 0.0 : 1.0, 0.0, used > 0 && pass));
  }

  {
    SsbmParams params = SsbmParams::with_equal_sizes(2000, 3, 0.002, 0.05);
    auto rec = recommended_regularization(params);
    json j = check_entry("recommended_regularization", 1, rec.gamma_laplacian, 0.0, true);
    j["gamma_laplacian"] = rec.gamma_laplacian;
    j["gamma_sponge"] = rec.gamma_sponge;
    checks.push_back(j);

    auto mb = misclustering_bounds(0.1, 0.0, params.k, 1.0, params.l());
    json b = check_entry("misclustering_bounds", 1, mb.sponge_bound, 0.0, true);
    b["sponge_bound"] = mb.sponge_bound;
    b["laplacian_bound"] = mb.laplacian_bound;
    b["sponge_delta_threshold"] = mb.sponge_delta_threshold;
    checks.push_back(b);

    auto dt = dense_density_condition(params, 0.25);
    json t = check_entry("density_thresholds", 1, dt.dense_p, 0.0, true);
    t["dense_p"] = dt.dense_p;
    t["sparse_p"] = dt.sparse_p;
    checks.push_back(t);
  }

  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.at("pass").get<bool>();

  json report;
  report["experiment"] = "theory-check";
  report["version"] = kVersion;
  report["config"] = {{"seed", seed}, {"draws", draws}, {"n_max", n_max}};
  report["checks"] = checks;
  report["all_pass"] = all_pass;
  return report;
}

}  // namespace sgc
