#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "sgc/error.hpp"
#include "sgc/operators.hpp"
#include "sgc/rng.hpp"
#include "sgc/ssbm.hpp"
#include "test_util.hpp"

using namespace sgc;

namespace {

// Dense references assembled directly from the dense adjacency.
struct DenseOracle {
  Eigen::MatrixXd a;
  Eigen::VectorXd dplus, dminus, dbar;

  explicit DenseOracle(const SignedGraph& g) {
    a = testutil::dense_adjacency(g);
    dplus = a.cwiseMax(0.0).rowwise().sum();
    dminus = (-a).cwiseMax(0.0).rowwise().sum();
    dbar = dplus + dminus;
  }

  Eigen::MatrixXd signed_laplacian() const {
    return Eigen::MatrixXd(dbar.asDiagonal()) - a;
  }
  Eigen::MatrixXd sym_signed_laplacian(double gp = 0.0, double gm = 0.0) const {
    int64_t n = a.rows();
    Eigen::MatrixXd ag =
        a + Eigen::MatrixXd::Constant(n, n, (gp - gm) / static_cast<double>(n));
    Eigen::VectorXd s = (dbar.array() + gp + gm).rsqrt();
    return Eigen::MatrixXd::Identity(n, n) - s.asDiagonal() * ag * s.asDiagonal();
  }
  Eigen::MatrixXd unsigned_sym_laplacian(bool positive, double gamma) const {
    int64_t n = a.rows();
    Eigen::MatrixXd part =
        positive ? Eigen::MatrixXd(a.cwiseMax(0.0)) : Eigen::MatrixXd((-a).cwiseMax(0.0));
    part += Eigen::MatrixXd::Constant(n, n, gamma / static_cast<double>(n));
    Eigen::VectorXd deg = part.rowwise().sum();
    Eigen::VectorXd s = deg.array().rsqrt();
    return Eigen::MatrixXd::Identity(n, n) - s.asDiagonal() * part * s.asDiagonal();
  }
  Eigen::MatrixXd brc() const { return Eigen::MatrixXd(dplus.asDiagonal()) - a; }
  Eigen::MatrixXd bnc() const {
    Eigen::VectorXd s = dbar.array().rsqrt();
    return s.asDiagonal() * brc() * s.asDiagonal();
  }
};

void check_symmetry_probe(const Operator& op, uint64_t seed) {
  Rng rng(seed);
  int64_t n = op.dim();
  double scale = op.norm_estimate();
  for (int probe = 0; probe < 32; ++probe) {
    Eigen::VectorXd x(n), y(n);
    for (int64_t i = 0; i < n; ++i) {
      x[i] = rng.uniform(-1.0, 1.0);
      y[i] = rng.uniform(-1.0, 1.0);
    }
    double lhs = x.dot(op.apply(y));
    double rhs = y.dot(op.apply(x));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * x.norm() * y.norm() * std::max(scale, 1.0));
  }
}

}  // namespace

TEST_CASE("signed laplacian of a single edge") {
  for (double w : {1.0, -1.0}) {
    auto g = SignedGraph::from_edges(2, {{0, 1, w}});
    Eigen::MatrixXd l = signed_laplacian(g).dense();
    Eigen::MatrixXd want(2, 2);
    want << 1.0, -w, -w, 1.0;
    CHECK((l - want).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    CHECK(es.eigenvalues()[0] == doctest::Approx(0.0));
    CHECK(es.eigenvalues()[1] == doctest::Approx(2.0));
  }
}

TEST_CASE("sym signed laplacian of a single edge has spectrum {0, 2}") {
  auto g = SignedGraph::from_edges(2, {{0, 1, 1.0}});
  Eigen::MatrixXd l = sym_signed_laplacian(g).dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.0));
  CHECK(es.eigenvalues()[1] == doctest::Approx(2.0));
}

TEST_CASE("dense oracle match for every operator kind at n = 30") {
  auto g = testutil::random_signed_graph(30, 0.5, 999);
  DenseOracle oracle(g);

  CHECK((signed_laplacian(g).dense() - oracle.signed_laplacian()).norm() <= 1e-12);
  CHECK((sym_signed_laplacian(g).dense() - oracle.sym_signed_laplacian()).norm() <= 1e-12);
  CHECK((regularized_sym_signed_laplacian(g, {0.7, 0.3}).dense() -
         oracle.sym_signed_laplacian(0.7, 0.3))
            .norm() <= 1e-12);
  CHECK((unsigned_sym_laplacian(g.positive(), OperatorKind::UnsignedSymLaplacianPlus, 2.0)
             .dense() -
         oracle.unsigned_sym_laplacian(true, 2.0))
            .norm() <= 1e-12);
  CHECK((brc_operator(g).dense() - oracle.brc()).norm() <= 1e-12);
  CHECK((bnc_operator(g).dense() - oracle.bnc()).norm() <= 1e-12);
  CHECK((adjacency_operator(g).dense() - oracle.a).norm() <= 1e-12);
}

TEST_CASE("symmetry probes for every kind") {
  auto g = testutil::random_signed_graph(40, 0.3, 1234);
  check_symmetry_probe(signed_laplacian(g), 1);
  check_symmetry_probe(sym_signed_laplacian(g), 2);
  check_symmetry_probe(regularized_sym_signed_laplacian(g, {1.5, 0.2}), 3);
  check_symmetry_probe(brc_operator(g), 4);
  check_symmetry_probe(bnc_operator(g), 5);
  check_symmetry_probe(adjacency_operator(g), 6);
  auto pencil = sponge_sym_pencil(g, 1.0, 0.5, {0.5, 0.5});
  check_symmetry_probe(pencil.numerator, 7);
  check_symmetry_probe(pencil.denominator, 8);
}

TEST_CASE("isolated nodes are a hard error without regularization") {
  auto g = SignedGraph::from_edges(3, {{0, 1, 1.0}});  // node 2 isolated
  CHECK_THROWS_AS(sym_signed_laplacian(g), Error);
  CHECK_THROWS_AS(bnc_operator(g), Error);
  CHECK_THROWS_AS(
      unsigned_sym_laplacian(g.positive(), OperatorKind::UnsignedSymLaplacianPlus, 0.0),
      Error);
  // gamma > 0 repairs it
  CHECK_NOTHROW(regularized_sym_signed_laplacian(g, {0.5, 0.5}));
  // errors carry the code
  try {
    sym_signed_laplacian(g);
  } catch (const Error& e) {
    CHECK(e.code() == Status::IsolatedNode);
  }
}

TEST_CASE("gamma = 0 reduction is exact") {
  for (uint64_t seed = 0; seed < 4; ++seed) {
    auto g = testutil::random_signed_graph(24, 0.5, 40 + seed);
    Eigen::MatrixXd a = regularized_sym_signed_laplacian(g, {0.0, 0.0}).dense();
    Eigen::MatrixXd b = sym_signed_laplacian(g).dense();
    CHECK((a - b).norm() == 0.0);
  }
}

TEST_CASE("equal gammas drop the rank-one term") {
  auto g = testutil::random_signed_graph(20, 0.4, 11);
  DenseOracle oracle(g);
  double gamma = 1.4;
  Eigen::MatrixXd got = regularized_sym_signed_laplacian(g, {gamma / 2, gamma / 2}).dense();
  Eigen::VectorXd s = (oracle.dbar.array() + gamma).rsqrt();
  Eigen::MatrixXd want =
      Eigen::MatrixXd::Identity(20, 20) - s.asDiagonal() * oracle.a * s.asDiagonal();
  CHECK((got - want).norm() <= 1e-14);
}

TEST_CASE("empty graph with gamma+ = 1 is the centering projector") {
  auto g = SignedGraph::from_edges(8, {});
  Eigen::MatrixXd l = regularized_sym_signed_laplacian(g, {1.0, 0.0}).dense();
  Eigen::MatrixXd want = Eigen::MatrixXd::Identity(8, 8) -
                         Eigen::MatrixXd::Constant(8, 8, 1.0 / 8.0);
  CHECK((l - want).norm() <= 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.0));
  for (int i = 1; i < 8; ++i) CHECK(es.eigenvalues()[i] == doctest::Approx(1.0));
}

TEST_CASE("complete unsigned graph spectrum {0, n/(n-1)}") {
  std::vector<EdgeTriple> edges;
  int64_t n = 9;
  for (int64_t u = 0; u < n; ++u) {
    for (int64_t v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  }
  auto g = SignedGraph::from_edges(n, edges);
  Eigen::MatrixXd l =
      unsigned_sym_laplacian(g.positive(), OperatorKind::UnsignedSymLaplacianPlus, 0.0)
          .dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.0));
  for (int64_t i = 1; i < n; ++i) {
    CHECK(es.eigenvalues()[i] == doctest::Approx(9.0 / 8.0));
  }
}

TEST_CASE("huge gamma drives the operator to the centering projector") {
  auto g = testutil::random_signed_graph(10, 0.5, 3, 0.0);
  Eigen::MatrixXd l =
      unsigned_sym_laplacian(g.positive(), OperatorKind::RegUnsignedSymLaplacianPlus, 1e6)
          .dense();
  Eigen::MatrixXd want = Eigen::MatrixXd::Identity(10, 10) -
                         Eigen::MatrixXd::Constant(10, 10, 0.1);
  CHECK((l - want).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("spectrum of normalized signed laplacians lies in [0, 2]") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    auto g = testutil::random_signed_graph(50, 0.25, 800 + seed);
    auto [lcc, map] = g.largest_component();
    if (lcc.num_nodes() < 2) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym_signed_laplacian(lcc).dense());
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    CHECK(es.eigenvalues().maxCoeff() <= 2.0 + 1e-8);

    Regularization reg{0.3 * (seed + 1), 0.2};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(
        regularized_sym_signed_laplacian(g, reg).dense());
    CHECK(er.eigenvalues().minCoeff() >= -1e-8);
    CHECK(er.eigenvalues().maxCoeff() <= 2.0 + 1e-8);
  }
}

TEST_CASE("laplacian kinds are PSD on random graphs") {
  auto g = testutil::random_signed_graph(35, 0.4, 21);
  for (const Operator& op :
       {signed_laplacian(g), regularized_sym_signed_laplacian(g, {0.4, 0.1})}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("BRC on an all-positive graph equals the unsigned laplacian") {
  auto g = testutil::random_signed_graph(16, 0.5, 9, 0.0);
  DenseOracle oracle(g);
  Eigen::MatrixXd want = Eigen::MatrixXd(oracle.dplus.asDiagonal()) - oracle.a.cwiseMax(0.0);
  CHECK((brc_operator(g).dense() - want).norm() == 0.0);
}

TEST_CASE("BRC of a single negative edge") {
  auto g = SignedGraph::from_edges(2, {{0, 1, -1.0}});
  Eigen::MatrixXd want(2, 2);
  want << 0.0, 1.0, 1.0, 0.0;
  CHECK((brc_operator(g).dense() - want).norm() == 0.0);
}

TEST_CASE("adjacency method flags largest-k embedding") {
  auto g = SignedGraph::from_edges(2, {{0, 1, 1.0}});
  CHECK(adjacency_operator(g).embeds_largest());
  CHECK_FALSE(adjacency_operator(g).embeds_k_minus_1());
  CHECK(sym_signed_laplacian(g).embeds_k_minus_1());
  CHECK(signed_laplacian(g).embeds_k_minus_1());
  CHECK_FALSE(brc_operator(g).embeds_k_minus_1());
}

TEST_CASE("sponge_sym pencil needs tau_plus > 0") {
  auto g = testutil::random_signed_graph(20, 0.5, 2);
  CHECK_THROWS_AS(sponge_sym_pencil(g, 0.0, 0.0, {}), Error);
}

TEST_CASE("pure positive graph pencil is well-posed once gamma- > 0") {
  auto g = testutil::random_signed_graph(14, 0.6, 4, 0.0);  // no negative edges
  CHECK_THROWS_AS(sponge_sym_pencil(g, 1.0, 0.0, {}), Error);
  auto pencil = sponge_sym_pencil(g, 1.0, 0.0, {0.0, 0.8});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pencil.denominator.dense());
  CHECK(es.eigenvalues().minCoeff() >= 1.0 - 1e-10);  // >= tau_plus
}

TEST_CASE("sponge_sym pencil matches the dense T oracle") {
  auto g = testutil::random_signed_graph(30, 0.6, 77);
  double tp = 1.3, tm = 0.4;
  auto pencil = sponge_sym_pencil(g, tp, tm, {});
  DenseOracle oracle(g);
  Eigen::MatrixXd lp = oracle.unsigned_sym_laplacian(true, 0.0) +
                       tm * Eigen::MatrixXd::Identity(30, 30);
  Eigen::MatrixXd lm = oracle.unsigned_sym_laplacian(false, 0.0) +
                       tp * Eigen::MatrixXd::Identity(30, 30);
  CHECK((pencil.numerator.dense() - lp).norm() <= 1e-12);
  CHECK((pencil.denominator.dense() - lm).norm() <= 1e-12);

  // Generalized eigenvalues of (lp, lm) equal eigenvalues of
  // lm^{-1/2} lp lm^{-1/2}.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(lp, lm);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(lm);
  Eigen::MatrixXd w = esm.operatorInverseSqrt();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> est(w * lp * w);
  CHECK((ges.eigenvalues().head(5) - est.eigenvalues().head(5)).cwiseAbs().maxCoeff() <=
        1e-8);
}

TEST_CASE("combinatorial sponge pencil dense oracle") {
  auto g = testutil::random_signed_graph(30, 0.6, 78);
  DenseOracle oracle(g);
  double tp = 2.0, tm = 0.3;
  auto pencil = sponge_pencil(g, tp, tm);
  Eigen::MatrixXd ap = oracle.a.cwiseMax(0.0);
  Eigen::MatrixXd am = (-oracle.a).cwiseMax(0.0);
  Eigen::MatrixXd lp = Eigen::MatrixXd(oracle.dplus.asDiagonal()) - ap;
  Eigen::MatrixXd lm = Eigen::MatrixXd(oracle.dminus.asDiagonal()) - am;
  Eigen::MatrixXd num = lp + tm * Eigen::MatrixXd(oracle.dminus.asDiagonal());
  Eigen::MatrixXd den = lm + tp * Eigen::MatrixXd(oracle.dplus.asDiagonal());
  CHECK((pencil.numerator.dense() - num).norm() <= 1e-12);
  CHECK((pencil.denominator.dense() - den).norm() <= 1e-12);
}

TEST_CASE("combinatorial pencil rejects an indefinite denominator") {
  // All edges negative, so D+ = 0 and the denominator L- + tau+ D+ = L-
  // is singular.
  auto g = SignedGraph::from_edges(4, {{0, 1, -1.0}, {2, 3, -1.0}});
  CHECK_THROWS_AS(sponge_pencil(g, 1.0, 0.0), Error);
}

TEST_CASE("zero-degree policy: pseudo-inverse rows keep the pencil definite") {
  // Node 2 has no positive neighbors.
  auto g = SignedGraph::from_edges(4, {{0, 1, 1.0}, {1, 3, 1.0}, {2, 0, -1.0}, {2, 3, -1.0}});
  CHECK_THROWS_AS(sponge_sym_pencil(g, 1.0, 0.0, {}), Error);
  auto pencil = sponge_sym_pencil(g, 1.0, 0.0, {}, ZeroDegreePolicy::PseudoInverse);
  Eigen::MatrixXd num = pencil.numerator.dense();
  // The zero-degree row collapses to (1 + tau_minus) on the diagonal.
  CHECK(num(2, 2) == doctest::Approx(1.0));
  CHECK(num.row(2).cwiseAbs().sum() - std::abs(num(2, 2)) == doctest::Approx(0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pencil.denominator.dense());
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("lanczos smallest estimate brackets the true minimum") {
  auto g = testutil::random_signed_graph(60, 0.3, 5);
  auto [lcc, map] = g.largest_component();
  Operator op = signed_laplacian(lcc);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
  double est = lanczos_smallest_estimate(op, 20, 3);
  CHECK(est >= es.eigenvalues()[0] - 1e-9);
  CHECK(est <= es.eigenvalues()[0] + 0.5);  // converges fast at the extreme end
}
