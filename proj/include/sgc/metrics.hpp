#pragma once

#include <cstdint>
#include <vector>

#include "sgc/ssbm.hpp"

namespace sgc {

struct Contingency {
  std::vector<std::vector<int64_t>> table;  // k1 x k2 counts
  std::vector<int64_t> row_sums;
  std::vector<int64_t> col_sums;
  int64_t n = 0;

  static Contingency build(const Partition& a, const Partition& b);
};

/// Adjusted Rand Index in [-1, 1]. Two partitions in perfect agreement score
/// 1 even when the chance-correction denominator vanishes.
double ari(const Partition& a, const Partition& b);

struct MisclusterResult {
  double rate = 0.0;                 // min fraction of disagreements over label permutations
  std::vector<int32_t> permutation;  // pred label c plays truth label permutation[c]
  int64_t mismatches = 0;
};

/// Optimal label matching via the Hungarian algorithm on the agreement
/// matrix (k <= 64).
MisclusterResult misclustering_rate(const Partition& pred, const Partition& truth);

/// Fraction of each true cluster mislabeled after matching.
std::vector<double> per_cluster_error(const Partition& pred, const Partition& truth,
                                      const std::vector<int32_t>& permutation);

}  // namespace sgc
