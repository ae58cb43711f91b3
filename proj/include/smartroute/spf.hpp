#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "smartroute/graph.hpp"

namespace smartroute {

/// Simple path from nodes.front() to nodes.back(); links[i] joins nodes[i]
/// and nodes[i + 1].
struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;

  std::size_t hops() const { return links.size(); }
  bool empty() const { return nodes.empty(); }
  NodeId src() const { return nodes.front(); }
  NodeId dst() const { return nodes.back(); }
  bool uses(LinkId link) const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Optional positive per-link weight. Routing cost defaults to hop count.
using LinkWeight = std::function<double(const Link&)>;

/// Minimum-cost path avoiding `excluded`; among equal-cost paths the one
/// with the lexicographically smallest node-id sequence is returned.
/// Throws TopologyError for unknown endpoints.
std::optional<Path> shortest_path(const Topology& topology, NodeId src, NodeId dst, const LinkSet& excluded = {},
                                  const LinkWeight& weight = {});

/// Two edge-disjoint paths with least total hop count. `secondary` is empty
/// when every src/dst route shares some bridge, in which case `primary` is
/// the plain shortest path.
struct DisjointPair {
  Path primary;
  std::optional<Path> secondary;

  bool has_pair() const { return secondary.has_value(); }
  std::size_t total_hops() const { return primary.hops() + (secondary ? secondary->hops() : 0); }
};

/// Bhandari's edge-disjoint pair (K = 2): shortest path, then a
/// Bellman-Ford search over the graph with the first path's arcs reversed
/// and negated, then cancellation of interlacing links.
/// Throws TopologyError when src == dst, an endpoint is unknown, or dst is
/// unreachable.
DisjointPair edge_disjoint_pair(const Topology& topology, NodeId src, NodeId dst);

}  // namespace smartroute
