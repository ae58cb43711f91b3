#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace oracle {

namespace {

// Adjacency bitmask per node; n <= 8.
using Masks = std::vector<std::uint32_t>;

Masks masks_of(const SmallGraph& g) {
  Masks m(static_cast<std::size_t>(g.n), 0);
  for (auto [i, j] : g.edges) {
    m[i] |= 1u << j;
    m[j] |= 1u << i;
  }
  return m;
}

// Code of the graph with vertex v placed at position pos[v]: one bit per
// position pair (p < q) in lexicographic pair order.
std::uint32_t encode(const Masks& m, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::uint32_t code = 0;
  int bit = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q, ++bit) {
      if (m[order[p]] >> order[q] & 1u) code |= 1u << bit;
    }
  }
  return code;
}

// Colour refinement; returns an isomorphism-invariant colour per vertex.
std::vector<int> refine(const Masks& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> colour(n);
  for (int v = 0; v < n; ++v) colour[v] = __builtin_popcount(m[v]);
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].push_back(colour[v]);
      std::vector<int> nb;
      for (int u = 0; u < n; ++u) {
        if (m[v] >> u & 1u) nb.push_back(colour[u]);
      }
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::map<std::vector<int>, int> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    int r = 0;
    for (auto& [k, v] : rank) v = r++;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) next[v] = rank[sig[v]];
    if (next == colour) break;
    colour = next;
  }
  return colour;
}

// Canonical code: minimum encoding over orderings consistent with the
// refined colour classes (ordered by colour).
std::uint32_t canonical(const Masks& m) {
  const int n = static_cast<int>(m.size());
  const std::vector<int> colour = refine(m);
  std::map<int, std::vector<int>> cells;
  for (int v = 0; v < n; ++v) cells[colour[v]].push_back(v);
  std::vector<std::vector<int>> parts;
  for (auto& [c, vs] : cells) parts.push_back(vs);

  std::uint32_t best = UINT32_MAX;
  std::vector<int> order;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == parts.size()) {
      best = std::min(best, encode(m, order));
      return;
    }
    std::vector<int> cell = parts[k];
    std::sort(cell.begin(), cell.end());
    do {
      order.insert(order.end(), cell.begin(), cell.end());
      rec(k + 1);
      order.resize(order.size() - cell.size());
    } while (std::next_permutation(cell.begin(), cell.end()));
  };
  rec(0);
  return best;
}

SmallGraph decode(int n, std::uint32_t code) {
  SmallGraph g;
  g.n = n;
  int bit = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q, ++bit) {
      if (code >> bit & 1u) g.edges.emplace_back(p, q);
    }
  }
  return g;
}

bool connected(const SmallGraph& g) {
  if (g.n <= 1) return true;
  const Masks m = masks_of(g);
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < g.n; ++v) {
      if (frontier >> v & 1u) next |= m[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << g.n) - 1;
}

}  // namespace

std::vector<SmallGraph> all_graphs(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("all_graphs: n must be in [1, 8]");
  if (n == 1) return {SmallGraph{1, {}}};
  const auto smaller = all_graphs(n - 1);
  std::set<std::uint32_t> codes;
  // Every graph on n nodes is a graph on n - 1 nodes plus one vertex.
  for (const SmallGraph& h : smaller) {
    for (std::uint32_t nb = 0; nb < (1u << (n - 1)); ++nb) {
      SmallGraph g{n, h.edges};
      for (int v = 0; v < n - 1; ++v) {
        if (nb >> v & 1u) g.edges.emplace_back(v, n - 1);
      }
      codes.insert(canonical(masks_of(g)));
    }
  }
  std::vector<SmallGraph> out;
  out.reserve(codes.size());
  for (std::uint32_t c : codes) out.push_back(decode(n, c));
  return out;
}

std::vector<SmallGraph> connected_graphs(int n) {
  std::vector<SmallGraph> out;
  for (SmallGraph& g : all_graphs(n)) {
    if (connected(g)) out.push_back(std::move(g));
  }
  return out;
}

SmallGraph random_connected(int n, double extra_p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SmallGraph g;
  g.n = n;
  std::set<std::pair<int, int>> e;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int k = 1; k < n; ++k) {
    const int parent = perm[std::uniform_int_distribution<int>(0, k - 1)(rng)];
    e.emplace(std::min(parent, perm[k]), std::max(parent, perm[k]));
  }
  std::bernoulli_distribution extra(extra_p);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (extra(rng)) e.emplace(i, j);
    }
  }
  g.edges.assign(e.begin(), e.end());
  return g;
}

smartroute::Topology to_topology(const SmallGraph& g, const std::string& name) {
  using namespace smartroute;
  std::vector<Node> nodes;
  for (int v = 0; v < g.n; ++v) nodes.push_back({NodeId{static_cast<std::uint32_t>(v)}, double(v), 0.0});
  std::vector<Link> links;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    links.push_back({LinkId{static_cast<std::uint32_t>(k)}, NodeId{static_cast<std::uint32_t>(g.edges[k].first)},
                     NodeId{static_cast<std::uint32_t>(g.edges[k].second)}, 1.0});
  }
  return Topology::create(name, std::move(nodes), std::move(links));
}

Adjacency::Adjacency(const smartroute::Topology& t) : n(static_cast<int>(t.node_count())), adj(t.node_count()) {
  const auto links = t.links();
  for (std::size_t k = 0; k < links.size(); ++k) {
    const int a = static_cast<int>(t.node_index(links[k].a));
    const int b = static_cast<int>(t.node_index(links[k].b));
    adj[a].emplace_back(b, static_cast<int>(k));
    adj[b].emplace_back(a, static_cast<int>(k));
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
}

std::vector<std::vector<int>> floyd_warshall(const smartroute::Topology& t) {
  const int n = static_cast<int>(t.node_count());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& l : t.links()) {
    const int a = static_cast<int>(t.node_index(l.a));
    const int b = static_cast<int>(t.node_index(l.b));
    d[a][b] = d[b][a] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

std::vector<int> bfs(const Adjacency& a, int src, const std::set<int>& down) {
  std::vector<int> dist(a.n, kInf);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (auto [u, link] : a.adj[v]) {
      if (down.count(link) || dist[u] != kInf) continue;
      dist[u] = dist[v] + 1;
      q.push_back(u);
    }
  }
  return dist;
}

std::optional<std::vector<int>> lexmin_shortest(const Adjacency& a, int src, int dst, const std::set<int>& down) {
  const std::vector<int> to_dst = bfs(a, dst, down);
  if (to_dst[src] == kInf) return std::nullopt;
  std::vector<int> path{src};
  int v = src;
  while (v != dst) {
    int pick = -1;
    for (auto [u, link] : a.adj[v]) {  // sorted by neighbor
      if (!down.count(link) && to_dst[u] == to_dst[v] - 1) {
        pick = u;
        break;
      }
    }
    path.push_back(pick);
    v = pick;
  }
  return path;
}

std::vector<std::pair<int, std::vector<int>>> simple_paths(const Adjacency& a, int src, int dst) {
  std::vector<std::pair<int, std::vector<int>>> out;
  std::vector<bool> on(a.n, false);
  std::vector<int> links;
  std::function<void(int)> dfs = [&](int v) {
    if (v == dst) {
      out.emplace_back(static_cast<int>(links.size()), links);
      return;
    }
    on[v] = true;
    for (auto [u, link] : a.adj[v]) {
      if (on[u]) continue;
      links.push_back(link);
      dfs(u);
      links.pop_back();
    }
    on[v] = false;
  };
  dfs(src);
  return out;
}

std::optional<int> min_disjoint_pair(const Adjacency& a, int src, int dst) {
  std::optional<int> best;
  for (const auto& [len, links] : simple_paths(a, src, dst)) {
    const std::set<int> used(links.begin(), links.end());
    const int second = bfs(a, src, used)[dst];
    if (second == kInf) continue;
    if (!best || len + second < *best) best = len + second;
  }
  return best;
}

std::vector<double> brute_force_ebc(const smartroute::Topology& t) {
  const Adjacency a(t);
  std::vector<double> ebc(t.link_count(), 0.0);
  for (int s = 0; s < a.n; ++s) {
    for (int d = s + 1; d < a.n; ++d) {
      const std::vector<int> to_d = bfs(a, d);
      std::vector<std::vector<int>> paths;
      std::vector<int> links;
      std::function<void(int)> walk = [&](int v) {
        if (v == d) {
          paths.push_back(links);
          return;
        }
        for (auto [u, link] : a.adj[v]) {
          if (to_d[u] != to_d[v] - 1) continue;
          links.push_back(link);
          walk(u);
          links.pop_back();
        }
      };
      walk(s);
      for (const auto& p : paths) {
        for (int link : p) ebc[link] += 1.0 / static_cast<double>(paths.size());
      }
    }
  }
  return ebc;
}

}  // namespace oracle
