#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "smartroute/graph.hpp"

namespace smartroute {

namespace {

std::string describe_link(std::size_t position, const Link& link) {
  return "links[" + std::to_string(position) + "] (id " + std::to_string(link.id.value) + ")";
}

}  // namespace

Topology Topology::create(std::string name, std::vector<Node> nodes, std::vector<Link> links) {
  if (nodes.size() < 2) {
    throw TopologyError("topology '" + name + "' needs at least 2 nodes, got " + std::to_string(nodes.size()));
  }
  if (links.empty()) {
    throw TopologyError("topology '" + name + "' has no links");
  }

  Topology t;
  t.name_ = std::move(name);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i].x) || !std::isfinite(nodes[i].y)) {
      throw TopologyError("nodes[" + std::to_string(i) + "] (id " + std::to_string(nodes[i].id.value) +
                          "): non-finite coordinates");
    }
    if (!t.node_index_.emplace(nodes[i].id.value, 0).second) {
      throw TopologyError("nodes[" + std::to_string(i) + "]: duplicate node id " + std::to_string(nodes[i].id.value));
    }
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    if (!t.link_index_.emplace(l.id.value, 0).second) {
      throw TopologyError(describe_link(i, l) + ": duplicate link id");
    }
    for (NodeId end : {l.a, l.b}) {
      if (!t.node_index_.contains(end.value)) {
        throw TopologyError(describe_link(i, l) + ": unknown node " + std::to_string(end.value));
      }
    }
    if (l.a == l.b) {
      throw TopologyError(describe_link(i, l) + ": self-loop on node " + std::to_string(l.a.value));
    }
    if (!(l.length_km > 0.0) || !std::isfinite(l.length_km)) {
      throw TopologyError(describe_link(i, l) + ": length_km must be positive, got " + std::to_string(l.length_km));
    }
    const auto key = std::minmax(l.a.value, l.b.value);
    if (!pairs.insert(key).second) {
      throw TopologyError(describe_link(i, l) + ": second link between nodes " + std::to_string(key.first) + " and " +
                          std::to_string(key.second));
    }
  }

  std::sort(nodes.begin(), nodes.end(), [](const Node& x, const Node& y) { return x.id < y.id; });
  std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) { return x.id < y.id; });
  t.nodes_ = std::move(nodes);
  t.links_ = std::move(links);

  for (std::size_t i = 0; i < t.nodes_.size(); ++i) t.node_index_[t.nodes_[i].id.value] = i;
  for (std::size_t i = 0; i < t.links_.size(); ++i) t.link_index_[t.links_[i].id.value] = i;

  t.adjacency_.resize(t.nodes_.size());
  for (std::size_t i = 0; i < t.links_.size(); ++i) {
    const std::size_t a = t.node_index_.at(t.links_[i].a.value);
    const std::size_t b = t.node_index_.at(t.links_[i].b.value);
    t.adjacency_[a].push_back({b, i});
    t.adjacency_[b].push_back({a, i});
  }
  for (auto& adj : t.adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Adjacent& x, const Adjacent& y) { return x.node < y.node; });
  }

  std::vector<bool> seen(t.nodes_.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (const Adjacent& e : t.adjacency_[u]) {
      if (!seen[e.node]) {
        seen[e.node] = true;
        ++reached;
        frontier.push(e.node);
      }
    }
  }
  if (reached != t.nodes_.size()) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw TopologyError("topology '" + t.name_ + "' is disconnected: node " +
                            std::to_string(t.nodes_[i].id.value) + " is unreachable from node " +
                            std::to_string(t.nodes_[0].id.value));
      }
    }
  }
  return t;
}

std::size_t Topology::node_index(NodeId id) const {
  const auto it = node_index_.find(id.value);
  if (it == node_index_.end()) throw TopologyError("unknown node " + std::to_string(id.value));
  return it->second;
}

std::size_t Topology::link_index(LinkId id) const {
  const auto it = link_index_.find(id.value);
  if (it == link_index_.end()) throw TopologyError("unknown link " + std::to_string(id.value));
  return it->second;
}

double Topology::min_length_km() const {
  return std::min_element(links_.begin(), links_.end(),
                          [](const Link& x, const Link& y) { return x.length_km < y.length_km; })
      ->length_km;
}

double Topology::max_length_km() const {
  return std::max_element(links_.begin(), links_.end(),
                          [](const Link& x, const Link& y) { return x.length_km < y.length_km; })
      ->length_km;
}

std::size_t LinkSet::size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

}  // namespace smartroute
