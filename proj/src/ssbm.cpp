#include "sgc/ssbm.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {

void Partition::validate() const {
  require(k >= 1, Status::InvalidArgument, "partition needs k >= 1");
  for (int32_t lab : labels) {
    require(lab >= 0 && lab < k, Status::InvalidArgument, "label out of range");
  }
}

std::vector<int64_t> Partition::cluster_sizes() const {
  std::vector<int64_t> out(k, 0);
  for (int32_t lab : labels) ++out[lab];
  return out;
}

void SsbmParams::validate() const {
  require(n >= 1, Status::InvalidArgument, "n must be positive");
  require(k >= 2, Status::InvalidArgument, "k must be at least 2");
  require(static_cast<int64_t>(sizes.size()) == k, Status::InvalidArgument,
          "sizes must have k entries");
  int64_t total = 0;
  for (int64_t s : sizes) {
    require(s >= 1, Status::InvalidArgument, "every cluster size must be >= 1");
    total += s;
  }
  require(total == n, Status::InvalidArgument, "cluster sizes must sum to n");
  require(p >= 0.0 && p <= 1.0, Status::InvalidArgument, "p must be in [0, 1]");
  require(eta >= 0.0 && eta < 0.5, Status::InvalidArgument, "eta must be in [0, 1/2)");
}

double SsbmParams::s() const {
  return static_cast<double>(*std::min_element(sizes.begin(), sizes.end())) /
         static_cast<double>(n);
}

double SsbmParams::l() const {
  return static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) /
         static_cast<double>(n);
}

SsbmParams SsbmParams::with_equal_sizes(int64_t n, int32_t k, double p, double eta) {
  require(k >= 2 && n >= k, Status::InvalidArgument, "need n >= k >= 2");
  std::vector<int64_t> sizes(k, n / k);
  for (int64_t i = 0; i < n % k; ++i) ++sizes[i];
  SsbmParams params{n, k, std::move(sizes), p, eta};
  params.validate();
  return params;
}

SsbmParams SsbmParams::with_sizes(std::vector<int64_t> sizes, double p, double eta) {
  int64_t n = std::accumulate(sizes.begin(), sizes.end(), int64_t{0});
  SsbmParams params{n, static_cast<int32_t>(sizes.size()), std::move(sizes), p, eta};
  params.validate();
  return params;
}

std::vector<int64_t> sizes_from_rho(int64_t n, int32_t k, double rho, uint64_t seed) {
  require(k >= 2, Status::InvalidArgument, "k must be at least 2");
  require(n >= k, Status::InvalidArgument, "need n >= k");
  require(rho > 0.0 && rho <= 1.0, Status::InvalidArgument, "rho must be in (0, 1]");

  // Smallest proportion pinned at 1/k, largest at 1/(k rho); intermediates
  // uniform in between. k = 2 has no intermediates and uses the endpoints.
  double lo = 1.0 / static_cast<double>(k);
  double hi = lo / rho;
  std::vector<double> raw(k);
  raw.front() = lo;
  raw.back() = hi;
  Rng rng = Rng::derive(seed, 0x5a17);
  for (int32_t i = 1; i + 1 < k; ++i) raw[i] = rng.uniform(lo, hi);
  double total = std::accumulate(raw.begin(), raw.end(), 0.0);

  // Largest-remainder rounding with a floor of one node per cluster.
  std::vector<int64_t> sizes(k);
  std::vector<std::pair<double, int32_t>> rem(k);
  int64_t assigned = 0;
  for (int32_t i = 0; i < k; ++i) {
    double target = static_cast<double>(n) * raw[i] / total;
    sizes[i] = std::max<int64_t>(1, static_cast<int64_t>(target));
    rem[i] = {target - static_cast<double>(sizes[i]), i};
    assigned += sizes[i];
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int32_t t = 0; assigned < n; t = (t + 1) % k) {
    ++sizes[rem[t].second];
    ++assigned;
  }
  for (int32_t t = 0; assigned > n; t = (t + 1) % k) {
    int32_t i = rem[k - 1 - t].second;
    if (sizes[i] > 1) {
      --sizes[i];
      --assigned;
    }
  }
  return sizes;
}

Partition ground_truth_partition(const SsbmParams& params) {
  Partition truth;
  truth.k = params.k;
  truth.labels.reserve(params.n);
  for (int32_t c = 0; c < params.k; ++c) {
    truth.labels.insert(truth.labels.end(), params.sizes[c], c);
  }
  return truth;
}

std::pair<SignedGraph, Partition> ssbm_sample(const SsbmParams& params, uint64_t seed) {
  params.validate();
  Partition truth = ground_truth_partition(params);

  Rng rng = Rng::derive(seed, 0x55b1);
  std::vector<EdgeTriple> edges;
  edges.reserve(static_cast<size_t>(params.p * static_cast<double>(params.n) *
                                    static_cast<double>(params.n) / 2.0) +
                16);
  for (int64_t u = 0; u < params.n; ++u) {
    for (int64_t v = u + 1; v < params.n; ++v) {
      if (!rng.bernoulli(params.p)) continue;
      double w = (truth.labels[u] == truth.labels[v]) ? 1.0 : -1.0;
      if (rng.bernoulli(params.eta)) w = -w;
      edges.push_back({u, v, w});
    }
  }
  return {SignedGraph::from_edges(params.n, edges), std::move(truth)};
}

Eigen::MatrixXd ssbm_expected_adjacency(const SsbmParams& params) {
  params.validate();
  require(params.n <= 5000, Status::GuardExceeded,
          "expected adjacency is dense; guarded at n <= 5000");
  Partition truth = ground_truth_partition(params);
  double a = params.p * (1.0 - 2.0 * params.eta);
  Eigen::MatrixXd m(params.n, params.n);
  for (int64_t i = 0; i < params.n; ++i) {
    for (int64_t j = 0; j < params.n; ++j) {
      if (i == j) {
        m(i, j) = 0.0;
      } else {
        m(i, j) = (truth.labels[i] == truth.labels[j]) ? a : -a;
      }
    }
  }
  return m;
}

}  // namespace sgc
