#include "sgc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

void Csr::multiply(const double* x, double* y) const {
  for (int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int64_t e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
      acc += val[e] * x[col[e]];
    }
    y[i] = acc;
  }
}

std::vector<double> Csr::abs_row_sums() const {
  std::vector<double> out(n, 0.0);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
      out[i] += std::abs(val[e]);
    }
  }
  return out;
}

Regularization make_regularization(double gamma_plus, double gamma_minus) {
  require(gamma_plus >= 0.0 && gamma_minus >= 0.0, Status::InvalidArgument,
          "regularization parameters must be nonnegative");
  return Regularization{gamma_plus, gamma_minus};
}

namespace {

// Assembles a CSR from directed half-edges (every undirected edge listed once
// per endpoint). keep decides which entries survive; map transforms values.
template <typename Keep, typename Map>
Csr build_csr(int64_t n, const std::vector<std::vector<std::pair<int32_t, double>>>& adj,
              Keep keep, Map map) {
  Csr m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  for (int64_t i = 0; i < n; ++i) {
    int64_t cnt = 0;
    for (const auto& [j, w] : adj[i]) {
      if (keep(w)) ++cnt;
    }
    m.row_ptr[i + 1] = m.row_ptr[i] + cnt;
  }
  m.col.resize(m.row_ptr[n]);
  m.val.resize(m.row_ptr[n]);
  for (int64_t i = 0; i < n; ++i) {
    int64_t at = m.row_ptr[i];
    for (const auto& [j, w] : adj[i]) {
      if (!keep(w)) continue;
      m.col[at] = j;
      m.val[at] = map(w);
      ++at;
    }
  }
  return m;
}

}  // namespace

SignedGraph::SignedGraph() {
  auto empty = std::make_shared<Csr>();
  empty->row_ptr.assign(1, 0);
  adjacency_ = empty;
  positive_ = empty;
  negative_ = empty;
}

SignedGraph SignedGraph::from_edges(int64_t n, const std::vector<EdgeTriple>& edges) {
  require(n >= 0, Status::InvalidArgument, "node count must be nonnegative");
  std::vector<std::vector<std::pair<int32_t, double>>> adj(n);
  for (const auto& e : edges) {
    require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n, Status::InvalidArgument,
            "edge index out of range");
    require(e.u != e.v, Status::InvalidArgument,
            "self-loop at node " + std::to_string(e.u));
    require(e.w != 0.0 && std::isfinite(e.w), Status::InvalidArgument,
            "edge weight must be finite and nonzero");
    adj[e.u].emplace_back(static_cast<int32_t>(e.v), e.w);
    adj[e.v].emplace_back(static_cast<int32_t>(e.u), e.w);
  }
  for (int64_t i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t t = 1; t < adj[i].size(); ++t) {
      require(adj[i][t].first != adj[i][t - 1].first, Status::InvalidArgument,
              "duplicate undirected edge at node " + std::to_string(i));
    }
  }

  SignedGraph g;
  g.adjacency_ = std::make_shared<Csr>(
      build_csr(n, adj, [](double) { return true; }, [](double w) { return w; }));
  g.positive_ = std::make_shared<Csr>(
      build_csr(n, adj, [](double w) { return w > 0.0; }, [](double w) { return w; }));
  g.negative_ = std::make_shared<Csr>(
      build_csr(n, adj, [](double w) { return w < 0.0; }, [](double w) { return -w; }));

  g.degrees_.dplus = g.positive_->abs_row_sums();
  g.degrees_.dminus = g.negative_->abs_row_sums();
  g.degrees_.dbar.resize(n);
  for (int64_t i = 0; i < n; ++i) {
    g.degrees_.dbar[i] = g.degrees_.dplus[i] + g.degrees_.dminus[i];
  }
  return g;
}

std::pair<std::vector<int64_t>, std::vector<int64_t>> connected_components(const Csr& m) {
  std::vector<int64_t> comp(m.n, -1);
  std::vector<int64_t> sizes;
  std::deque<int64_t> queue;
  for (int64_t start = 0; start < m.n; ++start) {
    if (comp[start] >= 0) continue;
    int64_t id = static_cast<int64_t>(sizes.size());
    sizes.push_back(0);
    comp[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      int64_t u = queue.front();
      queue.pop_front();
      ++sizes[id];
      for (int64_t e = m.row_ptr[u]; e < m.row_ptr[u + 1]; ++e) {
        int64_t v = m.col[e];
        if (comp[v] < 0) {
          comp[v] = id;
          queue.push_back(v);
        }
      }
    }
  }
  return {std::move(comp), std::move(sizes)};
}

std::pair<SignedGraph, std::vector<int64_t>> SignedGraph::largest_component() const {
  int64_t n = num_nodes();
  if (n == 0) return {*this, {}};
  auto [comp, sizes] = connected_components(*adjacency_);
  // Components are discovered in order of their smallest node id, so the
  // first maximum settles ties as required.
  int64_t best = 0;
  for (size_t c = 1; c < sizes.size(); ++c) {
    if (sizes[c] > sizes[best]) best = static_cast<int64_t>(c);
  }
  std::vector<int64_t> index_map(n, -1);
  int64_t next = 0;
  for (int64_t i = 0; i < n; ++i) {
    if (comp[i] == best) index_map[i] = next++;
  }
  std::vector<EdgeTriple> kept;
  for (const auto& e : to_edges()) {
    if (index_map[e.u] >= 0 && index_map[e.v] >= 0) {
      kept.push_back({index_map[e.u], index_map[e.v], e.w});
    }
  }
  return {SignedGraph::from_edges(next, kept), std::move(index_map)};
}

std::vector<EdgeTriple> SignedGraph::to_edges() const {
  std::vector<EdgeTriple> out;
  out.reserve(num_edges());
  const Csr& a = *adjacency_;
  for (int64_t i = 0; i < a.n; ++i) {
    for (int64_t e = a.row_ptr[i]; e < a.row_ptr[i + 1]; ++e) {
      if (a.col[e] > i) out.push_back({i, a.col[e], a.val[e]});
    }
  }
  return out;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::InvalidArgument: return "invalid_argument";
    case Status::IsolatedNode: return "isolated_node";
    case Status::IndefinitePencil: return "indefinite_pencil";
    case Status::GuardExceeded: return "guard_exceeded";
    case Status::IoError: return "io_error";
    case Status::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace sgc
