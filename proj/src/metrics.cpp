#include "sgc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgc/error.hpp"

namespace sgc {

Contingency Contingency::build(const Partition& a, const Partition& b) {
  require(a.size() == b.size(), Status::InvalidArgument, "partition length mismatch");
  a.validate();
  b.validate();
  Contingency c;
  c.n = a.size();
  c.table.assign(a.k, std::vector<int64_t>(b.k, 0));
  c.row_sums.assign(a.k, 0);
  c.col_sums.assign(b.k, 0);
  for (int64_t i = 0; i < c.n; ++i) {
    ++c.table[a.labels[i]][b.labels[i]];
    ++c.row_sums[a.labels[i]];
    ++c.col_sums[b.labels[i]];
  }
  return c;
}

namespace {

double choose2(int64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

// Hungarian algorithm (potentials formulation) on a square cost matrix;
// returns the column assigned to each row.
std::vector<int32_t> hungarian_min(const std::vector<std::vector<double>>& cost) {
  int k = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<int> way(k + 1, 0), match(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(k + 1, inf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int32_t> row_to_col(k, -1);
  for (int j = 1; j <= k; ++j) {
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

double ari(const Partition& a, const Partition& b) {
  Contingency c = Contingency::build(a, b);
  double sum_cells = 0.0;
  for (const auto& row : c.table) {
    for (int64_t x : row) sum_cells += choose2(x);
  }
  double sum_a = 0.0, sum_b = 0.0;
  for (int64_t x : c.row_sums) sum_a += choose2(x);
  for (int64_t x : c.col_sums) sum_b += choose2(x);
  double pairs = choose2(c.n);
  double expected = (pairs > 0.0) ? sum_a * sum_b / pairs : 0.0;
  double maximum = 0.5 * (sum_a + sum_b);
  if (maximum - expected == 0.0) {
    // Degenerate chance correction (e.g. both single-cluster): perfect
    // agreement scores 1.
    return (sum_cells == maximum) ? 1.0 : 0.0;
  }
  return (sum_cells - expected) / (maximum - expected);
}

MisclusterResult misclustering_rate(const Partition& pred, const Partition& truth) {
  require(pred.size() == truth.size(), Status::InvalidArgument, "partition length mismatch");
  require(pred.k == truth.k, Status::InvalidArgument,
          "misclustering_rate needs matching cluster counts");
  require(pred.k <= 64, Status::GuardExceeded, "permutation matching guarded at k <= 64");
  Contingency c = Contingency::build(pred, truth);

  // Maximize agreement == minimize negated agreement.
  std::vector<std::vector<double>> cost(pred.k, std::vector<double>(pred.k, 0.0));
  for (int i = 0; i < pred.k; ++i) {
    for (int j = 0; j < truth.k; ++j) cost[i][j] = -static_cast<double>(c.table[i][j]);
  }
  MisclusterResult out;
  out.permutation = hungarian_min(cost);
  int64_t agreed = 0;
  for (int i = 0; i < pred.k; ++i) agreed += c.table[i][out.permutation[i]];
  out.mismatches = c.n - agreed;
  out.rate = (c.n > 0) ? static_cast<double>(out.mismatches) / static_cast<double>(c.n) : 0.0;
  return out;
}

std::vector<double> per_cluster_error(const Partition& pred, const Partition& truth,
                                      const std::vector<int32_t>& permutation) {
  require(pred.size() == truth.size(), Status::InvalidArgument, "partition length mismatch");
  require(static_cast<int32_t>(permutation.size()) == pred.k, Status::InvalidArgument,
          "permutation size must equal k");
  std::vector<int64_t> wrong(truth.k, 0), total(truth.k, 0);
  for (int64_t i = 0; i < truth.size(); ++i) {
    ++total[truth.labels[i]];
    if (permutation[pred.labels[i]] != truth.labels[i]) ++wrong[truth.labels[i]];
  }
  std::vector<double> out(truth.k, 0.0);
  for (int32_t cluster = 0; cluster < truth.k; ++cluster) {
    if (total[cluster] > 0) {
      out[cluster] = static_cast<double>(wrong[cluster]) / static_cast<double>(total[cluster]);
    }
  }
  return out;
}

}  // namespace sgc
