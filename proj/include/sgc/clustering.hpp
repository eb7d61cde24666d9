#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sgc/ssbm.hpp"

namespace sgc {

struct KmeansOptions {
  int restarts = 10;
  int max_iter = 300;
  double tol = 1e-9;          // relative cost-change stop
  bool row_normalize = false;  // off: cluster raw embedding rows
};

struct KmeansResult {
  Partition partition;
  Eigen::MatrixXd centers;  // k x m
  double cost = 0.0;        // sum of squared distances to assigned centers
  int restarts_used = 0;
  int iterations = 0;
};

/// k-means++ seeding: first center uniform, each next sampled with
/// probability proportional to squared distance to the chosen set.
Eigen::MatrixXd kmeanspp_seed(const Eigen::MatrixXd& points, int k, uint64_t seed);

/// Lloyd iterations from given centers. Cost is non-increasing; an emptied
/// cluster is re-seeded at the point farthest from its assigned center.
KmeansResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers, int max_iter,
                   double tol);

/// Best-of-restarts k-means++ on embedding rows; ties go to the lowest
/// restart index. Restart r uses the stream derived from (seed, r).
KmeansResult cluster_embedding(const Eigen::MatrixXd& rows, int k,
                               const KmeansOptions& opts, uint64_t seed);

}  // namespace sgc
