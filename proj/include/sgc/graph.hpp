#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace sgc {

/// Sparse symmetric matrix, CSR with both triangles materialized.
struct Csr {
  int64_t n = 0;
  std::vector<int64_t> row_ptr;  // size n+1
  std::vector<int32_t> col;
  std::vector<double> val;

  int64_t nnz() const { return static_cast<int64_t>(col.size()); }

  /// y = M x
  void multiply(const double* x, double* y) const;

  /// Row sums of |entries|.
  std::vector<double> abs_row_sums() const;
};

struct EdgeTriple {
  int64_t u;
  int64_t v;
  double w;
};

struct DegreeVectors {
  std::vector<double> dplus;   // row sums of A+
  std::vector<double> dminus;  // row sums of A-
  std::vector<double> dbar;    // dplus + dminus
};

struct Regularization {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma() const { return gamma_plus + gamma_minus; }
};

Regularization make_regularization(double gamma_plus, double gamma_minus);

/// Undirected signed graph A = A+ - A- with disjoint supports, zero diagonal.
/// Immutable after construction; safe to share across threads.
class SignedGraph {
public:
  SignedGraph();  // the empty graph on zero nodes

  /// Rejects self loops, duplicate undirected pairs, out-of-range indices and
  /// zero weights. The sign of w routes the edge into A+ or A-.
  static SignedGraph from_edges(int64_t n, const std::vector<EdgeTriple>& edges);

  int64_t num_nodes() const { return adjacency_->n; }
  int64_t num_edges() const { return adjacency_->nnz() / 2; }

  const Csr& adjacency() const { return *adjacency_; }
  std::shared_ptr<const Csr> adjacency_ptr() const { return adjacency_; }
  std::shared_ptr<const Csr> positive() const { return positive_; }
  std::shared_ptr<const Csr> negative() const { return negative_; }

  const DegreeVectors& degrees() const { return degrees_; }

  /// Largest connected component of the unsigned support. Ties between
  /// equal-size components go to the one containing the smallest node id.
  /// index_map[old] = new id, or -1 for nodes outside the component.
  std::pair<SignedGraph, std::vector<int64_t>> largest_component() const;

  /// Canonical triples (u < v), sorted by (u, v).
  std::vector<EdgeTriple> to_edges() const;

private:
  std::shared_ptr<const Csr> adjacency_;
  std::shared_ptr<const Csr> positive_;
  std::shared_ptr<const Csr> negative_;
  DegreeVectors degrees_;
};

/// Component ids and sizes from breadth-first search on the unsigned support.
std::pair<std::vector<int64_t>, std::vector<int64_t>> connected_components(const Csr& m);

}  // namespace sgc
