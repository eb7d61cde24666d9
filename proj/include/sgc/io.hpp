#pragma once

#include <string>

#include "sgc/graph.hpp"
#include "sgc/ssbm.hpp"

namespace sgc {

/// Edge-list text format: one `u v w` line per undirected edge, 0-based ids,
/// lines starting with '#' or '%' are comments. The node count is
/// max(id) + 1 unless a `# nodes: N` comment states it.
SignedGraph read_edge_list(const std::string& path);
void write_edge_list(const SignedGraph& g, const std::string& path);

/// Labels file: `node,label` header followed by one row per node.
Partition read_labels(const std::string& path);
void write_labels(const Partition& p, const std::string& path);

}  // namespace sgc
