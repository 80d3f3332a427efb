#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psimplex/symbol.hpp"

namespace psimplex {

// Irreflexive arc relation over cell ids with a designated general. Arcs are
// simplex channels: a parent can send to a child, never conversely.
// Construction normalizes (sorts, dedupes) and precomputes adjacency.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::vector<CellId> nodes, std::vector<std::pair<CellId, CellId>> arcs,
          CellId general)
      : nodes_(std::move(nodes)), arcs_(std::move(arcs)), general_(general) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    for (const auto& [from, to] : arcs_) {
      children_[from].push_back(to);
      parents_[to].push_back(from);
    }
  }

  const std::vector<CellId>& nodes() const { return nodes_; }
  const std::vector<std::pair<CellId, CellId>>& arcs() const { return arcs_; }
  CellId general() const { return general_; }
  std::int64_t size() const { return static_cast<std::int64_t>(nodes_.size()); }

  bool has_node(CellId id) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), id);
  }
  bool has_arc(CellId from, CellId to) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(from, to));
  }

  const std::vector<CellId>& children(CellId id) const {
    static const std::vector<CellId> kEmpty;
    auto it = children_.find(id);
    return it == children_.end() ? kEmpty : it->second;
  }
  const std::vector<CellId>& parents(CellId id) const {
    static const std::vector<CellId> kEmpty;
    auto it = parents_.find(id);
    return it == parents_.end() ? kEmpty : it->second;
  }
  std::int64_t outdegree(CellId id) const {
    return static_cast<std::int64_t>(children(id).size());
  }

 private:
  std::vector<CellId> nodes_;
  std::vector<std::pair<CellId, CellId>> arcs_;
  CellId general_ = 1;
  std::map<CellId, std::vector<CellId>> children_;
  std::map<CellId, std::vector<CellId>> parents_;
};

struct ValidationReport {
  bool irreflexive = true;
  bool simple = true;
  bool strongly_connected = true;
  bool ok() const { return irreflexive && simple && strongly_connected; }
};

struct TopologyMetrics {
  std::int64_t size = 0;
  std::int64_t ecc_general = 0;  // max BFS distance from the general
  std::int64_t diameter = 0;     // max over all ordered pairs
  bool reachable_from_all = true;
};

// BFS distances from `from` along arc direction, keyed by node order;
// -1 marks unreachable nodes.
inline std::map<CellId, std::int64_t> bfs_distances(const Digraph& d, CellId from) {
  std::map<CellId, std::int64_t> dist;
  for (CellId n : d.nodes()) dist[n] = -1;
  if (!d.has_node(from)) throw std::invalid_argument("bfs_distances: unknown node");
  std::deque<CellId> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    CellId u = queue.front();
    queue.pop_front();
    for (CellId c : d.children(u)) {
      if (dist[c] == -1) {
        dist[c] = dist[u] + 1;
        queue.push_back(c);
      }
    }
  }
  return dist;
}

inline ValidationReport validate(const Digraph& d) {
  ValidationReport report;
  for (const auto& [from, to] : d.arcs()) {
    if (from == to) report.irreflexive = false;
    if (!d.has_node(from) || !d.has_node(to)) report.simple = false;
  }
  // Digraph construction dedupes arcs, so simplicity beyond node membership
  // holds; strong connectivity checked by repeated BFS.
  for (CellId n : d.nodes()) {
    auto dist = bfs_distances(d, n);
    for (const auto& [node, dv] : dist) {
      if (dv < 0) {
        report.strongly_connected = false;
        break;
      }
    }
    if (!report.strongly_connected) break;
  }
  return report;
}

inline TopologyMetrics metrics(const Digraph& d) {
  TopologyMetrics m;
  m.size = d.size();
  std::int64_t diameter = 0;
  for (CellId n : d.nodes()) {
    auto dist = bfs_distances(d, n);
    std::int64_t ecc = 0;
    for (const auto& [node, dv] : dist) {
      if (dv < 0) throw std::invalid_argument("metrics: digraph is not strongly connected");
      ecc = std::max(ecc, dv);
    }
    if (n == d.general()) m.ecc_general = ecc;
    diameter = std::max(diameter, ecc);
  }
  m.diameter = diameter;
  return m;
}

}  // namespace psimplex
