#include "sgc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sgc/error.hpp"

namespace sgc {

SignedGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Status::IoError, "cannot open " + path);
  std::vector<EdgeTriple> edges;
  int64_t n = -1;
  int64_t max_id = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#' || line[0] == '%') {
      auto pos = line.find("nodes:");
      if (pos != std::string::npos) n = std::stoll(line.substr(pos + 6));
      continue;
    }
    std::istringstream ls(line);
    EdgeTriple e{};
    require(static_cast<bool>(ls >> e.u >> e.v >> e.w), Status::IoError,
            "malformed edge line: " + line);
    max_id = std::max({max_id, e.u, e.v});
    edges.push_back(e);
  }
  if (n < 0) n = max_id + 1;
  return SignedGraph::from_edges(n, edges);
}

void write_edge_list(const SignedGraph& g, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  require(f != nullptr, Status::IoError, "cannot write " + path);
  std::fprintf(f, "# nodes: %lld\n", static_cast<long long>(g.num_nodes()));
  for (const auto& e : g.to_edges()) {
    std::fprintf(f, "%lld %lld %.17g\n", static_cast<long long>(e.u),
                 static_cast<long long>(e.v), e.w);
  }
  std::fclose(f);
}

Partition read_labels(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Status::IoError, "cannot open " + path);
  Partition p;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "node,label") continue;
    auto comma = line.find(',');
    require(comma != std::string::npos, Status::IoError, "malformed label line: " + line);
    int64_t node = std::stoll(line.substr(0, comma));
    int32_t label = static_cast<int32_t>(std::stol(line.substr(comma + 1)));
    require(node == p.size(), Status::IoError, "label rows must be dense in node order");
    p.labels.push_back(label);
    p.k = std::max(p.k, label + 1);
  }
  p.validate();
  return p;
}

void write_labels(const Partition& p, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  require(f != nullptr, Status::IoError, "cannot write " + path);
  std::fprintf(f, "node,label\n");
  for (int64_t i = 0; i < p.size(); ++i) {
    std::fprintf(f, "%lld,%d\n", static_cast<long long>(i), p.labels[i]);
  }
  std::fclose(f);
}

}  // namespace sgc
