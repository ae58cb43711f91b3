#include <queue>
#include <stdexcept>
#include <string>

#include "smartroute/graph.hpp"

namespace smartroute {

EbcTable edge_betweenness(const Topology& topology) {
  const std::size_t n = topology.node_count();
  EbcTable table;
  table.raw.assign(topology.link_count(), 0.0);

  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<long> dist(n);
  std::vector<std::vector<Adjacent>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1L);
    for (auto& p : preds) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (const Adjacent& e : topology.neighbors(v)) {
        if (dist[e.node] < 0) {
          dist[e.node] = dist[v] + 1;
          frontier.push(e.node);
        }
        if (dist[e.node] == dist[v] + 1) {
          sigma[e.node] += sigma[v];
          preds[e.node].push_back({v, e.link});
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (const Adjacent& p : preds[w]) {
        const double c = sigma[p.node] / sigma[w] * (1.0 + delta[w]);
        table.raw[p.link] += c;
        delta[p.node] += c;
      }
    }
  }

  // Every unordered pair was visited from both of its endpoints.
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  table.normalized.resize(table.raw.size());
  for (std::size_t i = 0; i < table.raw.size(); ++i) {
    table.raw[i] /= 2.0;
    table.normalized[i] = table.raw[i] / pairs;
  }
  return table;
}

double flow_betweenness(std::size_t affected_flows, std::size_t total_flows) {
  if (total_flows == 0) throw std::invalid_argument("flow_betweenness: empty flow set");
  if (affected_flows > total_flows) {
    throw std::invalid_argument("flow_betweenness: " + std::to_string(affected_flows) + " affected flows out of " +
                                std::to_string(total_flows));
  }
  return static_cast<double>(affected_flows) / static_cast<double>(total_flows);
}

}  // namespace smartroute
