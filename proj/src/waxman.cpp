#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "smartroute/graph.hpp"

namespace smartroute {

namespace {

// Links between coincident points still need a positive length.
constexpr double kMinLinkKm = 1e-3;

struct Candidate {
  std::size_t a;
  std::size_t b;
  double d;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::size_t count_components(std::size_t n, const std::vector<Candidate>& edges, std::vector<std::size_t>& parent) {
  parent.resize(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::size_t components = n;
  for (const Candidate& e : edges) {
    const auto ra = find_root(parent, e.a);
    const auto rb = find_root(parent, e.b);
    if (ra != rb) {
      parent[std::max(ra, rb)] = std::min(ra, rb);
      --components;
    }
  }
  return components;
}

}  // namespace

double waxman_probability(double distance, double max_distance, double alpha, double beta) {
  if (max_distance <= 0.0 || distance <= 0.0) return beta;
  return beta * std::exp(-distance / (max_distance * alpha));
}

Topology generate_waxman(const WaxmanParams& params) {
  if (params.nodes < 2) throw TopologyError("waxman: need at least 2 nodes, got " + std::to_string(params.nodes));
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) throw TopologyError("waxman: alpha must be in (0, 1]");
  if (!(params.beta > 0.0 && params.beta <= 1.0)) throw TopologyError("waxman: beta must be in (0, 1]");
  if (!(params.plane_km > 0.0) || !std::isfinite(params.plane_km)) throw TopologyError("waxman: plane must be positive");

  Rng rng = make_stream(params.seed, Stream::Placement);
  std::uniform_real_distribution<double> coord(0.0, params.plane_km);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t n = params.nodes;
  std::vector<Node> nodes(n);
  std::vector<Candidate> edges;
  std::vector<std::size_t> parent;

  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) {
      nodes[i] = Node{NodeId{static_cast<std::uint32_t>(i)}, coord(rng), coord(rng)};
    }
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        max_d = std::max(max_d, std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y));
      }
    }
    edges.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
        if (unit(rng) < waxman_probability(d, max_d, params.alpha, params.beta)) edges.push_back({i, j, d});
      }
    }
    if (count_components(n, edges, parent) == 1) break;
  }

  // Patch the final sample if every attempt came out disconnected.
  while (count_components(n, edges, parent) > 1) {
    Candidate best{0, 0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (find_root(parent, i) == find_root(parent, j)) continue;
        const double d = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
        if (d < best.d) best = {i, j, d};
      }
    }
    edges.push_back(best);
  }

  std::vector<Link> links;
  links.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    links.push_back(Link{LinkId{static_cast<std::uint32_t>(k)}, nodes[edges[k].a].id, nodes[edges[k].b].id,
                         std::max(edges[k].d, kMinLinkKm)});
  }
  return Topology::create(params.name, std::move(nodes), std::move(links));
}

}  // namespace smartroute
