#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

/// Cluster labels in {0, ..., k-1}. Empty clusters are allowed in predicted
/// partitions; ground-truth constructors always fill every cluster.
struct Partition {
  std::vector<int32_t> labels;
  int32_t k = 0;

  int64_t size() const { return static_cast<int64_t>(labels.size()); }
  void validate() const;
  std::vector<int64_t> cluster_sizes() const;
};

struct SsbmParams {
  int64_t n = 0;
  int32_t k = 2;
  std::vector<int64_t> sizes;  // must sum to n, all >= 1
  double p = 0.0;
  double eta = 0.0;  // in [0, 1/2)

  void validate() const;

  double s() const;     // smallest cluster proportion
  double l() const;     // largest cluster proportion
  double rho() const { return s() / l(); }
  double dbar() const { return p * static_cast<double>(n - 1); }

  /// Near-equal sizes (differ by at most one).
  static SsbmParams with_equal_sizes(int64_t n, int32_t k, double p, double eta);
  static SsbmParams with_sizes(std::vector<int64_t> sizes, double p, double eta);
};

/// Cluster sizes for a target aspect ratio: proportions drawn uniformly in
/// [1/k, 1/(k*rho)], normalized, then rounded by largest remainder so they
/// sum to n with every size >= 1.
std::vector<int64_t> sizes_from_rho(int64_t n, int32_t k, double rho, uint64_t seed);

/// Each unordered pair is an edge with probability p; the sign is + within
/// clusters and - across, then flipped independently with probability eta.
/// Nodes are block-contiguous: the first n1 nodes form cluster 0, and so on.
std::pair<SignedGraph, Partition> ssbm_sample(const SsbmParams& params, uint64_t seed);

/// Dense E[A]: p(1-2eta) within clusters, -p(1-2eta) across, zero diagonal.
/// Guarded at n <= 5000.
Eigen::MatrixXd ssbm_expected_adjacency(const SsbmParams& params);

Partition ground_truth_partition(const SsbmParams& params);

}  // namespace sgc
