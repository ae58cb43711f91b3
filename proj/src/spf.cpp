#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "smartroute/spf.hpp"

namespace smartroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Path make_path(const Topology& topology, const std::vector<std::size_t>& node_idx,
               const std::vector<std::size_t>& link_idx) {
  Path p;
  p.nodes.reserve(node_idx.size());
  p.links.reserve(link_idx.size());
  for (std::size_t n : node_idx) p.nodes.push_back(topology.node_at(n).id);
  for (std::size_t l : link_idx) p.links.push_back(topology.link_at(l).id);
  return p;
}

// Distance from every node to `target` over non-excluded links.
std::vector<double> distances_to(const Topology& topology, std::size_t target, const LinkSet& excluded,
                                 const LinkWeight& weight) {
  std::vector<double> dist(topology.node_count(), kInf);
  dist[target] = 0.0;
  if (!weight) {
    std::queue<std::size_t> frontier;
    frontier.push(target);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (const Adjacent& e : topology.neighbors(u)) {
        if (excluded.contains(e.link) || dist[e.node] != kInf) continue;
        dist[e.node] = dist[u] + 1.0;
        frontier.push(e.node);
      }
    }
    return dist;
  }

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, target);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Adjacent& e : topology.neighbors(u)) {
      if (excluded.contains(e.link)) continue;
      const double w = weight(topology.link_at(e.link));
      if (!(w > 0.0)) throw TopologyError("link weights must be positive");
      if (d + w < dist[e.node]) {
        dist[e.node] = d + w;
        heap.emplace(dist[e.node], e.node);
      }
    }
  }
  return dist;
}

}  // namespace

bool Path::uses(LinkId link) const { return std::find(links.begin(), links.end(), link) != links.end(); }

std::optional<Path> shortest_path(const Topology& topology, NodeId src, NodeId dst, const LinkSet& excluded,
                                  const LinkWeight& weight) {
  const std::size_t s = topology.node_index(src);
  const std::size_t t = topology.node_index(dst);
  const std::vector<double> dist = distances_to(topology, t, excluded, weight);
  if (dist[s] == kInf) return std::nullopt;

  // Walk forward, always taking the smallest-id neighbor that stays on a
  // shortest route; this yields the lexicographically smallest sequence.
  std::vector<std::size_t> nodes{s};
  std::vector<std::size_t> links;
  std::size_t u = s;
  while (u != t) {
    bool advanced = false;
    for (const Adjacent& e : topology.neighbors(u)) {
      if (excluded.contains(e.link) || dist[e.node] == kInf) continue;
      const double w = weight ? weight(topology.link_at(e.link)) : 1.0;
      const double slack = std::abs(dist[u] - (w + dist[e.node]));
      if (slack <= 1e-9 * std::max(1.0, dist[u])) {
        nodes.push_back(e.node);
        links.push_back(e.link);
        u = e.node;
        advanced = true;
        break;
      }
    }
    if (!advanced) return std::nullopt;  // unreachable for consistent distances
  }
  return make_path(topology, nodes, links);
}

DisjointPair edge_disjoint_pair(const Topology& topology, NodeId src, NodeId dst) {
  if (src == dst) throw TopologyError("edge_disjoint_pair: src and dst are both node " + std::to_string(src.value));
  const std::size_t n = topology.node_count();
  const std::size_t s = topology.node_index(src);
  const std::size_t t = topology.node_index(dst);

  auto first = shortest_path(topology, src, dst);
  if (!first) {
    throw TopologyError("edge_disjoint_pair: node " + std::to_string(dst.value) + " unreachable from node " +
                        std::to_string(src.value));
  }

  // Direction in which the first path traverses each of its links.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first_from(topology.link_count(), kNone);
  for (std::size_t i = 0; i < first->links.size(); ++i) {
    first_from[topology.link_index(first->links[i])] = topology.node_index(first->nodes[i]);
  }

  // Bellman-Ford on the residual graph: first-path arcs only usable
  // backwards at cost -1, everything else at +1 in both directions.
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> pred_node(n, kNone);
  std::vector<std::size_t> pred_link(n, kNone);
  dist[s] = 0.0;
  for (std::size_t round = 0; round + 1 < n; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] == kInf) continue;
      for (const Adjacent& e : topology.neighbors(u)) {
        double w = 1.0;
        if (first_from[e.link] != kNone) {
          if (first_from[e.link] == u) continue;
          w = -1.0;
        }
        if (dist[u] + w < dist[e.node]) {
          dist[e.node] = dist[u] + w;
          pred_node[e.node] = u;
          pred_link[e.node] = e.link;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  DisjointPair result;
  if (dist[t] == kInf) {
    result.primary = std::move(*first);
    return result;
  }

  // Union of both arc sets with interlacing links cancelled.
  std::map<std::size_t, std::vector<Adjacent>> out;  // from -> (to, link)
  std::vector<bool> cancelled(topology.link_count(), false);
  std::vector<std::pair<std::size_t, Adjacent>> second_arcs;
  for (std::size_t v = t; v != s; v = pred_node[v]) {
    second_arcs.push_back({pred_node[v], Adjacent{v, pred_link[v]}});
  }
  for (const auto& [from, arc] : second_arcs) {
    if (first_from[arc.link] != kNone) {
      cancelled[arc.link] = true;
    } else {
      out[from].push_back(arc);
    }
  }
  for (std::size_t i = 0; i < first->links.size(); ++i) {
    const std::size_t l = topology.link_index(first->links[i]);
    if (cancelled[l]) continue;
    out[topology.node_index(first->nodes[i])].push_back(
        Adjacent{topology.node_index(first->nodes[i + 1]), l});
  }
  for (auto& [from, arcs] : out) {
    std::sort(arcs.begin(), arcs.end(), [](const Adjacent& x, const Adjacent& y) {
      return x.node != y.node ? x.node < y.node : x.link < y.link;
    });
  }

  std::vector<Path> paths;
  for (int k = 0; k < 2; ++k) {
    std::vector<std::size_t> nodes{s};
    std::vector<std::size_t> links;
    std::size_t u = s;
    while (u != t) {
      auto& arcs = out[u];
      if (arcs.empty()) throw std::logic_error("edge_disjoint_pair: broken flow decomposition");
      const Adjacent next = arcs.front();
      arcs.erase(arcs.begin());
      nodes.push_back(next.node);
      links.push_back(next.link);
      u = next.node;
    }
    paths.push_back(make_path(topology, nodes, links));
  }

  const bool swap = paths[1].hops() < paths[0].hops() ||
                    (paths[1].hops() == paths[0].hops() && paths[1].nodes < paths[0].nodes);
  if (swap) std::swap(paths[0], paths[1]);
  result.primary = std::move(paths[0]);
  result.secondary = std::move(paths[1]);
  return result;
}

}  // namespace smartroute
