#include "sgc/clustering.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {

namespace {

void assign(const Eigen::MatrixXd& pts, const Eigen::MatrixXd& centers,
            std::vector<int32_t>& labels, Eigen::VectorXd& dist2) {
  int64_t n = pts.rows();
  int k = static_cast<int>(centers.rows());
  for (int64_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int32_t arg = 0;
    for (int c = 0; c < k; ++c) {
      double d = (pts.row(i) - centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    labels[i] = arg;
    dist2[i] = best;
  }
}

}  // namespace

Eigen::MatrixXd kmeanspp_seed(const Eigen::MatrixXd& points, int k, uint64_t seed) {
  int64_t n = points.rows();
  require(k >= 1 && n >= k, Status::InvalidArgument, "kmeans++ needs n >= k >= 1");
  Rng rng = Rng::derive(seed, 0x5eed);

  Eigen::MatrixXd centers(k, points.cols());
  std::vector<bool> chosen(n, false);
  Eigen::VectorXd d2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());

  int64_t first = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
  centers.row(0) = points.row(first);
  chosen[first] = true;

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c - 1)).squaredNorm());
      total += d2[i];
    }
    int64_t pick = -1;
    if (total > 0.0) {
      double target = rng.uniform01() * total;
      double acc = 0.0;
      for (int64_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = n - 1;
    } else {
      // All remaining distances are zero: fall back to a uniform pick among
      // points not yet chosen, so k = n selects every point exactly once.
      int64_t free_count = 0;
      for (int64_t i = 0; i < n; ++i) free_count += chosen[i] ? 0 : 1;
      require(free_count > 0, Status::Internal, "kmeans++ ran out of points");
      int64_t skip = static_cast<int64_t>(rng.below(static_cast<uint64_t>(free_count)));
      for (int64_t i = 0; i < n; ++i) {
        if (!chosen[i] && skip-- == 0) {
          pick = i;
          break;
        }
      }
    }
    centers.row(c) = points.row(pick);
    chosen[pick] = true;
  }
  return centers;
}

KmeansResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers, int max_iter,
                   double tol) {
  int64_t n = points.rows();
  int k = static_cast<int>(centers.rows());
  require(points.cols() == centers.cols(), Status::InvalidArgument,
          "points/centers dimension mismatch");
  require(n >= 1 && k >= 1, Status::InvalidArgument, "empty kmeans problem");

  KmeansResult out;
  out.partition.k = k;
  out.partition.labels.assign(n, 0);
  Eigen::VectorXd d2(n);

  assign(points, centers, out.partition.labels, d2);
  double cost = d2.sum();
  int it = 0;
  for (; it < max_iter; ++it) {
    // Means of assigned points; empty clusters re-seed at the worst-fit point.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int64_t> counts(k, 0);
    for (int64_t i = 0; i < n; ++i) {
      sums.row(out.partition.labels[i]) += points.row(i);
      ++counts[out.partition.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
      } else {
        int64_t far_idx = 0;
        d2.maxCoeff(&far_idx);
        centers.row(c) = points.row(far_idx);
        d2[far_idx] = 0.0;
      }
    }

    std::vector<int32_t> prev = out.partition.labels;
    assign(points, centers, out.partition.labels, d2);
    double new_cost = d2.sum();
    bool fixpoint = (prev == out.partition.labels);
    bool small_change = std::abs(cost - new_cost) <= tol * std::max(cost, 1e-300);
    cost = new_cost;
    if (fixpoint || small_change) {
      ++it;
      break;
    }
  }

  out.centers = std::move(centers);
  out.cost = cost;
  out.iterations = it;
  return out;
}

KmeansResult cluster_embedding(const Eigen::MatrixXd& rows, int k,
                               const KmeansOptions& opts, uint64_t seed) {
  require(rows.cols() >= 1, Status::InvalidArgument, "embedding must have >= 1 column");
  require(opts.restarts >= 1, Status::InvalidArgument, "need at least one restart");
  Eigen::MatrixXd pts = rows;
  if (opts.row_normalize) {
    for (int64_t i = 0; i < pts.rows(); ++i) {
      double nrm = pts.row(i).norm();
      if (nrm > 0.0) pts.row(i) /= nrm;
    }
  }

  KmeansResult best;
  bool have = false;
  for (int r = 0; r < opts.restarts; ++r) {
    uint64_t rs = Rng::derive(seed, 0xc0 + static_cast<uint64_t>(r)).next_u64();
    Eigen::MatrixXd centers = kmeanspp_seed(pts, k, rs);
    KmeansResult cur = lloyd(pts, std::move(centers), opts.max_iter, opts.tol);
    cur.restarts_used = r + 1;
    if (!have || cur.cost < best.cost) {
      best = std::move(cur);
      have = true;
    }
  }
  best.restarts_used = opts.restarts;
  return best;
}

}  // namespace sgc
