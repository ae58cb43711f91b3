#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smartroute/rng.hpp"

namespace smartroute {

struct NodeId {
  std::uint32_t value{};
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct LinkId {
  std::uint32_t value{};
  friend constexpr auto operator<=>(LinkId, LinkId) = default;
};

struct Node {
  NodeId id;
  double x{};
  double y{};

  friend bool operator==(const Node&, const Node&) = default;
};

/// Undirected link. `a < b` is not required in input; the topology keeps the
/// endpoints in the order they were given.
struct Link {
  LinkId id;
  NodeId a;
  NodeId b;
  double length_km{};

  NodeId other(NodeId n) const { return n == a ? b : a; }
  friend bool operator==(const Link&, const Link&) = default;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adjacency entry: neighbor node index and the index of the connecting link.
struct Adjacent {
  std::size_t node;
  std::size_t link;
};

/// Connected, undirected, simple graph. Immutable once created.
///
/// Nodes and links are stored sorted by id, so dense indices preserve id
/// order; algorithms that break ties on index order therefore break them on
/// id order as well.
class Topology {
 public:
  /// Validates and builds a topology. Throws TopologyError naming the
  /// offending record on duplicate ids, unknown endpoints, self-loops,
  /// parallel links, non-positive lengths or a disconnected graph.
  static Topology create(std::string name, std::vector<Node> nodes, std::vector<Link> links);

  const std::string& name() const { return name_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Link> links() const { return links_; }

  const Node& node_at(std::size_t index) const { return nodes_[index]; }
  const Link& link_at(std::size_t index) const { return links_[index]; }

  bool has_node(NodeId id) const { return node_index_.contains(id.value); }
  bool has_link(LinkId id) const { return link_index_.contains(id.value); }
  std::size_t node_index(NodeId id) const;
  std::size_t link_index(LinkId id) const;

  /// Neighbors of a node, ordered by neighbor id.
  std::span<const Adjacent> neighbors(std::size_t node_index) const { return adjacency_[node_index]; }

  double min_length_km() const;
  double max_length_km() const;

  friend bool operator==(const Topology& lhs, const Topology& rhs) {
    return lhs.name_ == rhs.name_ && lhs.nodes_ == rhs.nodes_ && lhs.links_ == rhs.links_;
  }

 private:
  Topology() = default;

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::unordered_map<std::uint32_t, std::size_t> node_index_;
  std::unordered_map<std::uint32_t, std::size_t> link_index_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

/// Membership set over the links of one topology, keyed by link index.
class LinkSet {
 public:
  LinkSet() = default;
  explicit LinkSet(std::size_t link_count) : bits_(link_count, false) {}

  void insert(std::size_t link_index) { bits_.at(link_index) = true; }
  void erase(std::size_t link_index) { bits_.at(link_index) = false; }
  bool contains(std::size_t link_index) const { return link_index < bits_.size() && bits_[link_index]; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

 private:
  std::vector<bool> bits_;
};

// -- topology file ---------------------------------------------------------

Topology parse_topology(std::string_view json_text);
std::string serialize_topology(const Topology& topology);
Topology load_topology(const std::filesystem::path& path);

// -- Waxman generator ------------------------------------------------------

struct WaxmanParams {
  std::size_t nodes{};
  double alpha{};
  double beta{};
  double plane_km{1000.0};
  std::uint64_t seed{};
  std::string name{"waxman"};
};

/// Connection probability beta * exp(-d / (L * alpha)).
double waxman_probability(double distance, double max_distance, double alpha, double beta);

/// Places nodes uniformly in a square plane and links pairs with the Waxman
/// probability. Disconnected samples are redrawn (up to 100 attempts); if
/// the last one is still disconnected, the shortest inter-component
/// candidate links are added until it is connected.
Topology generate_waxman(const WaxmanParams& params);

// -- centrality ------------------------------------------------------------

struct EbcTable {
  std::vector<double> raw;         // by link index
  std::vector<double> normalized;  // raw / number of unordered node pairs
};

/// Edge betweenness with hop-count weights (Brandes' accumulation), each
/// unordered node pair counted once.
EbcTable edge_betweenness(const Topology& topology);

/// Flow-restricted betweenness: the share of demand flows crossing a link.
double flow_betweenness(std::size_t affected_flows, std::size_t total_flows);

}  // namespace smartroute

template <>
struct std::hash<smartroute::NodeId> {
  std::size_t operator()(smartroute::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

template <>
struct std::hash<smartroute::LinkId> {
  std::size_t operator()(smartroute::LinkId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
