#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "sgc/eigensolve.hpp"
#include "sgc/error.hpp"
#include "sgc/operators.hpp"
#include "sgc/rng.hpp"
#include "sgc/ssbm.hpp"
#include "sgc/theory.hpp"
#include "test_util.hpp"

using namespace sgc;

TEST_CASE("dense eig: identity and diagonal") {
  Embedding id = dense_sym_eig(Eigen::MatrixXd::Identity(6, 6));
  for (int i = 0; i < 6; ++i) CHECK(id.values[i] == doctest::Approx(1.0));

  Eigen::VectorXd d(5);
  d << 1, 2, 3, 4, 5;
  Embedding diag = dense_sym_eig(Eigen::MatrixXd(d.asDiagonal()));
  for (int i = 0; i < 5; ++i) {
    CHECK(diag.values[i] == doctest::Approx(i + 1.0));
    // canonical axis vector up to sign
    CHECK(std::abs(diag.vectors(i, i)) == doctest::Approx(1.0));
  }
}

TEST_CASE("dense eig: reconstruction residual on a random symmetric matrix") {
  Rng rng(17);
  Eigen::MatrixXd m(50, 50);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j <= i; ++j) {
      m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
    }
  }
  Embedding full = dense_sym_eig(m);
  Eigen::MatrixXd rebuilt =
      full.vectors * full.values.asDiagonal() * full.vectors.transpose();
  CHECK((m - rebuilt).norm() <= 1e-9 * m.norm());
  for (int i = 1; i < 50; ++i) CHECK(full.values[i] >= full.values[i - 1]);
}

TEST_CASE("dense eig guard") {
  CHECK_THROWS_AS(dense_sym_eig(Eigen::MatrixXd::Zero(2001, 2001)), Error);
}

TEST_CASE("smallest_k on the single-edge laplacian") {
  auto g = SignedGraph::from_edges(2, {{0, 1, 1.0}});
  Embedding e = smallest_k(sym_signed_laplacian(g), 1, {});
  CHECK(e.values[0] == doctest::Approx(0.0));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(e.vectors(0, 0) == doctest::Approx(e.vectors(1, 0)));
}

TEST_CASE("smallest_k of the identity operator") {
  auto g = SignedGraph::from_edges(40, {});
  // Empty graph with equal gammas: the rank-one term cancels and the
  // operator is exactly I.
  Operator op = regularized_sym_signed_laplacian(g, {0.5, 0.5});
  Embedding e = smallest_k(op, 3, {});
  for (int i = 0; i < 3; ++i) CHECK(e.values[i] == doctest::Approx(1.0));
}

TEST_CASE("iterative values match the dense oracle on an SSBM laplacian") {
  auto params = SsbmParams::with_equal_sizes(200, 3, 0.25, 0.1);
  auto [g, truth] = ssbm_sample(params, 31);
  Operator op = sym_signed_laplacian(g);
  SolveOptions opts;
  opts.seed = 5;
  Embedding it = smallest_k(op, 2, opts);
  Embedding dense = dense_sym_eig(op.dense());
  CHECK(it.converged);
  for (int j = 0; j < 2; ++j) {
    CHECK(it.values[j] == doctest::Approx(dense.values[j]).epsilon(1e-7));
    CHECK(it.residuals[j] <= opts.tol * std::max(1.0, std::abs(it.values[j])) * 10);
  }
  CHECK(subspace_distance(dense.vectors.leftCols(2), it.vectors) <= 1e-5);
}

TEST_CASE("determinism: same seed, same embedding") {
  auto params = SsbmParams::with_equal_sizes(250, 3, 0.1, 0.1);
  auto [g, truth] = ssbm_sample(params, 8);
  SolveOptions opts;
  opts.seed = 77;
  Embedding a = smallest_k(sym_signed_laplacian(g), 2, opts);
  Embedding b = smallest_k(sym_signed_laplacian(g), 2, opts);
  CHECK((a.vectors - b.vectors).norm() == 0.0);
  CHECK((a.values - b.values).norm() == 0.0);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("oracle agreement across operator kinds on random SSBM draws") {
  // Values to 1e-6 and subspaces to 1e-5, skipping near-degenerate gaps.
  int compared = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto params = SsbmParams::with_equal_sizes(150 + 10 * (seed % 3), 3,
                                               0.2 + 0.02 * (seed % 4), 0.15);
    auto [g, truth] = ssbm_sample(params, 600 + seed);
    auto [lcc, map] = g.largest_component();
    if (lcc.num_nodes() < 100) continue;
    std::vector<Operator> ops;
    ops.push_back(sym_signed_laplacian(lcc));
    ops.push_back(signed_laplacian(lcc));
    ops.push_back(regularized_sym_signed_laplacian(lcc, {0.8, 0.4}));
    ops.push_back(bnc_operator(lcc));
    int k = 3;
    for (const Operator& op : ops) {
      SolveOptions opts;
      opts.seed = seed;
      Embedding it = smallest_k(op, k, opts);
      Embedding dense = dense_sym_eig(op.dense());
      if (dense.values[k] - dense.values[k - 1] < 1e-6) continue;  // gap too small
      ++compared;
      for (int j = 0; j < k; ++j) {
        CHECK(it.values[j] ==
              doctest::Approx(dense.values[j]).epsilon(1e-6).scale(std::max(1.0, dense.values[j])));
      }
      CHECK(subspace_distance(dense.vectors.leftCols(k), it.vectors) <= 1e-5);
    }
  }
  CHECK(compared >= 20);
}

TEST_CASE("generalized: pencil of an operator against itself gives ones") {
  auto g = testutil::random_signed_graph(30, 0.5, 12);
  auto pencil = sponge_sym_pencil(g, 1.0, 1.0, {1.0, 1.0});
  Pencil same{pencil.denominator, pencil.denominator, 1.0, 1.0};
  Embedding e = smallest_k_generalized(same, 3, {});
  for (int j = 0; j < 3; ++j) CHECK(e.values[j] == doctest::Approx(1.0));
}

TEST_CASE("generalized pencil matches the dense T oracle at n = 150") {
  auto params = SsbmParams::with_equal_sizes(150, 3, 0.25, 0.05);
  auto [g, truth] = ssbm_sample(params, 3);
  double tp = 1.0, tm = 0.2;
  auto pencil = sponge_sym_pencil(g, tp, tm, {});

  Eigen::MatrixXd lp = pencil.numerator.dense();
  Eigen::MatrixXd lm = pencil.denominator.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(lm);
  Eigen::MatrixXd w = esm.operatorInverseSqrt();
  Eigen::MatrixXd tmat = w * lp * w;
  tmat = 0.5 * (tmat + tmat.transpose()).eval();
  Embedding dense_t = dense_sym_eig(tmat);

  SolveOptions opts;
  opts.seed = 19;
  Embedding gen = smallest_k_generalized(pencil, 3, opts);
  for (int j = 0; j < 3; ++j) {
    CHECK(gen.values[j] == doctest::Approx(dense_t.values[j]).epsilon(1e-7));
  }

  // G_k(T) = (L- + tau+ I)^{-1/2} V_k(T): compare subspaces after mapping.
  Eigen::MatrixXd mapped = w * dense_t.vectors.leftCols(3);
  // Orthonormalize both for the subspace distance.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr1(mapped);
  Eigen::MatrixXd q1 = qr1.householderQ() * Eigen::MatrixXd::Identity(150, 3);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr2(gen.vectors);
  Eigen::MatrixXd q2 = qr2.householderQ() * Eigen::MatrixXd::Identity(150, 3);
  CHECK(subspace_distance(q1, q2) <= 1e-6);
}

TEST_CASE("pencil solves return denominator-orthonormal columns") {
  auto params = SsbmParams::with_equal_sizes(180, 3, 0.2, 0.1);
  auto [g, truth] = ssbm_sample(params, 21);
  auto pencil = sponge_sym_pencil(g, 2.0, 0.5, {});
  SolveOptions opts;
  opts.seed = 4;
  Embedding e = smallest_k_generalized(pencil, 3, opts);
  CHECK(e.metric == EmbeddingMetric::PencilDenominator);
  Eigen::MatrixXd ad(180, 3);
  for (int j = 0; j < 3; ++j) ad.col(j) = pencil.denominator.apply(e.vectors.col(j));
  Eigen::MatrixXd gram = e.vectors.transpose() * ad;
  CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-8);
  for (int j = 0; j < 3; ++j) {
    CHECK(e.residuals[j] <= opts.tol * std::max(1.0, e.values[j]) * 10);
  }
}

TEST_CASE("tau_plus -> infinity scales generalized values like Q / tau_plus") {
  auto params = SsbmParams::with_equal_sizes(160, 2, 0.3, 0.05);
  auto [g, truth] = ssbm_sample(params, 14);
  SolveOptions opts;
  opts.seed = 3;
  double tm = 0.5;  // keeps the smallest value of Q away from zero
  Embedding a = smallest_k_generalized(sponge_sym_pencil(g, 1e3, tm, {}), 2, opts);
  Embedding b = smallest_k_generalized(sponge_sym_pencil(g, 1e4, tm, {}), 2, opts);
  // values scale as 1/tau+, so ratios of the two smallest agree
  double ra = a.values[1] / a.values[0];
  double rb = b.values[1] / b.values[0];
  CHECK(ra == doctest::Approx(rb).epsilon(1e-2));
}

TEST_CASE("monotone residuals near convergence") {
  auto params = SsbmParams::with_equal_sizes(300, 3, 0.15, 0.05);
  auto [g, truth] = ssbm_sample(params, 55);
  SolveOptions opts;
  opts.seed = 6;
  Embedding e = smallest_k(sym_signed_laplacian(g), 2, opts);
  CHECK(e.converged);
  size_t h = e.residual_history.size();
  REQUIRE(h >= 5);
  for (size_t i = h - 4; i < h; ++i) {
    CHECK(e.residual_history[i] <= e.residual_history[i - 1] * (1.0 + 1e-9));
  }
}

TEST_CASE("non-convergence is flagged, not fatal") {
  auto params = SsbmParams::with_equal_sizes(400, 4, 0.1, 0.2);
  auto [g, truth] = ssbm_sample(params, 61);
  SolveOptions opts;
  opts.max_iter = 2;
  opts.tol = 1e-14;
  Embedding e = smallest_k(sym_signed_laplacian(g), 3, opts);
  CHECK_FALSE(e.converged);
  CHECK(e.vectors.cols() == 3);
}

TEST_CASE("subspace distance basics") {
  Rng rng(2);
  Eigen::MatrixXd u(6, 2);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 2; ++j) u(i, j) = rng.uniform(-1.0, 1.0);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(6, 2);

  CHECK(subspace_distance(q, q) <= 1e-12);

  // orthogonal complement in 2-d
  Eigen::MatrixXd e1(2, 1), e2(2, 1);
  e1 << 1, 0;
  e2 << 0, 1;
  CHECK(subspace_distance(e1, e2) == doctest::Approx(1.0));

  // rotation invariance
  Eigen::MatrixXd rot(2, 2);
  double a = 0.7;
  rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  CHECK(subspace_distance(q, q * rot) <= 1e-10);

  // symmetry
  Eigen::MatrixXd v(6, 2);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 2; ++j) v(i, j) = rng.uniform(-1.0, 1.0);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qrv(v);
  Eigen::MatrixXd qv = qrv.householderQ() * Eigen::MatrixXd::Identity(6, 2);
  CHECK(subspace_distance(q, qv) == doctest::Approx(subspace_distance(qv, q)).epsilon(1e-10));

  CHECK_THROWS_AS(subspace_distance(q, Eigen::MatrixXd::Identity(6, 3)), Error);
}

TEST_CASE("davis-kahan consistency for sampled vs expected laplacian") {
  auto params = SsbmParams::with_equal_sizes(500, 2, 0.2, 0.1);
  auto [g, truth] = ssbm_sample(params, 9);
  Operator op = sym_signed_laplacian(g);
  Eigen::MatrixXd sampled = op.dense();
  Eigen::MatrixXd expected = expected_sym_signed_laplacian(params);

  int m = params.k - 1;
  Embedding es = dense_sym_eig(sampled);
  Embedding ee = dense_sym_eig(expected);
  double dist = subspace_distance(ee.vectors.leftCols(m), es.vectors.leftCols(m));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diff(sampled - expected);
  double w = diff.eigenvalues().cwiseAbs().maxCoeff();
  // Davis-Kahan: gap measured between the sampled (k-1)th value and the
  // expected k-th value.
  double gap = es.values[m] - ee.values[m - 1];
  REQUIRE(gap > 0.0);
  CHECK(dist <= w / gap + 1e-6);
}
