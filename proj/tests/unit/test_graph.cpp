#include <cmath>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "smartroute/graph.hpp"

using namespace smartroute;

namespace {

std::string data(const std::string& rel) { return std::string(SMARTROUTE_DATA_DIR) + "/" + rel; }

Topology path3() { return oracle::to_topology({3, {{0, 1}, {1, 2}}}, "p3"); }
Topology c4() { return oracle::to_topology({4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}, "c4"); }

std::string error_of(const std::string& text) {
  try {
    parse_topology(text);
  } catch (const TopologyError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("smallest valid topology") {
  const Topology t = parse_topology(R"({"name":"pair","nodes":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0}],
                                        "links":[{"id":0,"a":0,"b":1,"length_km":100}]})");
  CHECK(t.node_count() == 2);
  CHECK(t.link_count() == 1);
  CHECK(t.min_length_km() == 100.0);
}

TEST_CASE("shipped janos-us has the published size and length range") {
  const Topology t = load_topology(data("topologies/janos-us.json"));
  CHECK(t.node_count() == 26);
  CHECK(t.link_count() == 42);
  CHECK(t.min_length_km() == doctest::Approx(145.0));
  CHECK(t.max_length_km() == doctest::Approx(1127.0));
}

TEST_CASE("shipped germany50 has the published size and length range") {
  const Topology t = load_topology(data("topologies/germany50.json"));
  CHECK(t.node_count() == 50);
  CHECK(t.link_count() == 88);
  CHECK(t.min_length_km() == doctest::Approx(36.0));
  CHECK(t.max_length_km() == doctest::Approx(236.0));
}

TEST_CASE("invalid topology files are rejected with context") {
  const std::string nodes = R"("nodes":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0},{"id":2,"x":2,"y":0}])";
  CHECK(error_of(R"({"name":"x",)" + nodes + R"(,"links":[{"id":0,"a":0,"b":99,"length_km":1}]})")
            .find("99") != std::string::npos);
  CHECK(error_of(R"({"name":"x",)" + nodes + R"(,"links":[{"id":0,"a":0,"b":1,"length_km":1},
                 {"id":0,"a":1,"b":2,"length_km":1}]})")
            .find("duplicate") != std::string::npos);
  CHECK(error_of(R"({"name":"x",)" + nodes + R"(,"links":[{"id":0,"a":0,"b":1,"length_km":1}]})")
            .find("disconnected") != std::string::npos);
  CHECK(error_of(R"({"name":"x",)" + nodes + R"(,"links":[{"id":0,"a":0,"b":1,"length_km":0},
                 {"id":1,"a":1,"b":2,"length_km":1}]})")
            .find("length_km") != std::string::npos);
  CHECK(error_of(R"({"name":"x",)" + nodes + R"(,"links":[{"id":0,"a":0,"b":1,"length_km":1},
                 {"id":1,"a":1,"b":0,"length_km":1},{"id":2,"a":1,"b":2,"length_km":1}]})")
            .find("second link") != std::string::npos);
  CHECK(error_of(R"({"name":"x",)" + nodes + R"(,"links":[{"id":0,"a":1,"b":1,"length_km":1}]})")
            .find("self-loop") != std::string::npos);
  CHECK(error_of("{ not json").find("malformed") != std::string::npos);
}

TEST_CASE("serialize then parse is the identity") {
  for (const std::string name : {"janos-us", "germany50", "waxman-70"}) {
    const Topology t = load_topology(data("topologies/" + name + ".json"));
    CHECK(parse_topology(serialize_topology(t)) == t);
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Topology t = generate_waxman({20, 0.4, 0.6, 500.0, seed, "w"});
    CHECK(parse_topology(serialize_topology(t)) == t);
  }
}

TEST_CASE("waxman connection probability") {
  CHECK(waxman_probability(0.0, 10.0, 0.5, 0.7) == doctest::Approx(0.7));
  CHECK(waxman_probability(10.0, 10.0, 1.0, 0.7) == doctest::Approx(0.7 * std::exp(-1.0)));
  CHECK(waxman_probability(10.0, 10.0, 1.0, 1.0) == doctest::Approx(0.3679).epsilon(1e-4));
}

TEST_CASE("waxman generator") {
  SUBCASE("same seed, same topology") {
    const WaxmanParams p{40, 0.2, 0.5, 1000.0, 11, "w"};
    CHECK(serialize_topology(generate_waxman(p)) == serialize_topology(generate_waxman(p)));
  }
  SUBCASE("shipped 70-node sample regenerates bit for bit") {
    const Topology shipped = load_topology(data("topologies/waxman-70.json"));
    const Topology regen = generate_waxman({70, 0.15, 0.45, 1000.0, 5, "waxman-70"});
    CHECK(serialize_topology(regen) == serialize_topology(shipped));
    CHECK(regen.node_count() == 70);
    CHECK(regen.link_count() >= 120);
    CHECK(regen.link_count() <= 160);
  }
  SUBCASE("always connected, even when sparse") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Topology t = generate_waxman({30, 0.05, 0.1, 1000.0, seed, "sparse"});
      const auto d = oracle::floyd_warshall(t);
      for (const auto& row : d) {
        for (int v : row) CHECK(v < oracle::kInf);
      }
    }
  }
  SUBCASE("lengths are euclidean distances") {
    const Topology t = generate_waxman({25, 0.3, 0.6, 800.0, 3, "w"});
    for (const Link& l : t.links()) {
      const Node& a = t.node_at(t.node_index(l.a));
      const Node& b = t.node_at(t.node_index(l.b));
      CHECK(l.length_km == doctest::Approx(std::hypot(a.x - b.x, a.y - b.y)));
    }
  }
  SUBCASE("parameter errors") {
    CHECK_THROWS_AS(generate_waxman({1, 0.5, 0.5, 1000.0, 1, "w"}), TopologyError);
    CHECK_THROWS_AS(generate_waxman({10, 0.0, 0.5, 1000.0, 1, "w"}), TopologyError);
    CHECK_THROWS_AS(generate_waxman({10, 0.5, 1.5, 1000.0, 1, "w"}), TopologyError);
  }
}

TEST_CASE("edge betweenness on small graphs") {
  SUBCASE("single link") {
    const Topology t = oracle::to_topology({2, {{0, 1}}});
    const EbcTable e = edge_betweenness(t);
    CHECK(e.raw[0] == doctest::Approx(1.0));
    CHECK(e.normalized[0] == doctest::Approx(1.0));
  }
  SUBCASE("4-cycle") {
    const EbcTable e = edge_betweenness(c4());
    for (double v : e.raw) CHECK(v == doctest::Approx(2.0));
  }
  SUBCASE("path of three") {
    const EbcTable e = edge_betweenness(path3());
    CHECK(e.raw[0] == doctest::Approx(2.0));
    CHECK(e.raw[1] == doctest::Approx(2.0));
    CHECK(e.normalized[0] == doctest::Approx(2.0 / 3.0));
  }
}

TEST_CASE("edge betweenness matches path enumeration on random graphs") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Topology t = oracle::to_topology(oracle::random_connected(12, 0.2, seed));
    const auto expect = oracle::brute_force_ebc(t);
    const EbcTable e = edge_betweenness(t);
    double total = 0.0;
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CHECK(e.raw[k] == doctest::Approx(expect[k]).epsilon(1e-12));
      total += e.raw[k];
    }
    // Each pair spreads its hop distance over the links it crosses.
    const auto d = oracle::floyd_warshall(t);
    double dist_sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i + 1; j < d.size(); ++j) dist_sum += d[i][j];
    }
    CHECK(total == doctest::Approx(dist_sum));
  }
}

TEST_CASE("flow betweenness") {
  CHECK(flow_betweenness(10, 10) == 1.0);
  CHECK(flow_betweenness(0, 10) == 0.0);
  CHECK(flow_betweenness(3, 10) == doctest::Approx(0.3));
  CHECK_THROWS_AS(flow_betweenness(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(flow_betweenness(11, 10), std::invalid_argument);
  for (std::size_t k = 0; k < 50; ++k) CHECK(flow_betweenness(k, 50) <= flow_betweenness(k + 1, 50));
}

TEST_CASE("exhaustive corpus has the known class counts") {
  const int connected[] = {1, 1, 2, 6, 21, 112, 853};
  const int all[] = {1, 2, 4, 11, 34, 156, 1044};
  for (int n = 1; n <= 7; ++n) {
    CHECK(oracle::connected_graphs(n).size() == static_cast<std::size_t>(connected[n - 1]));
    CHECK(oracle::all_graphs(n).size() == static_cast<std::size_t>(all[n - 1]));
  }
}
