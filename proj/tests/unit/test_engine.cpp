#include <cmath>
#include <map>

#include "doctest.h"
#include "smartroute/engine.hpp"

using namespace smartroute;

namespace {

std::string data(const std::string& rel) { return std::string(SMARTROUTE_DATA_DIR) + "/" + rel; }

Scenario janos(std::uint64_t seed, Mode mode) {
  Scenario s = load_scenario(data("scenarios/janos-us.json"));
  s.seed = seed;
  s.mode = mode;
  return s;
}

std::string fingerprint(const RunResult& r) {
  return summary_row(r.report) + "\n" + events_jsonl(r.traces.events) + alarms_jsonl(r.traces.alarms) +
         routes_jsonl(r.traces.routes);
}

}  // namespace

TEST_CASE("scenario files") {
  for (const char* name : {"janos-us", "germany50", "waxman-70"}) {
    const Scenario s = load_scenario(data(std::string("scenarios/") + name + ".json"));
    CHECK(s.topology->name() == name);
    CHECK(s.all_pairs);
    CHECK(s.predictor.score_lo == 0.9);
    // The echo is itself a valid scenario that echoes identically.
    const std::string echo = scenario_json(s);
    CHECK(scenario_json(parse_scenario(echo, data("scenarios"))) == echo);
  }
}

TEST_CASE("scenario errors") {
  const std::string topo = R"("topology": "../topologies/janos-us.json")";
  const auto parse = [&](const std::string& body) { return parse_scenario("{" + topo + body + "}", data("scenarios")); };
  CHECK_NOTHROW(parse(""));
  CHECK_THROWS_AS(parse(R"(, "colour": "red")"), ScenarioError);
  CHECK_THROWS_AS(parse(R"(, "mode": "ospf")"), ScenarioError);
  CHECK_THROWS_AS(parse(R"(, "sim_hours": -1)"), ScenarioError);
  CHECK_THROWS_AS(parse(R"(, "predictor": {"score_range": [0.5]})"), ScenarioError);
  CHECK_THROWS_AS(parse(R"(, "predictor": {"score_range": [0.7, 0.2]})"), ScenarioError);
  CHECK_THROWS_AS(parse(R"(, "demands": [[0, 99]])"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(R"({"topology": "nowhere.json"})", data("scenarios")), ScenarioError);
  CHECK_THROWS_AS(load_scenario(data("scenarios/missing.json")), ScenarioError);
  const Scenario explicit_demands = parse(R"(, "demands": [[0, 1], [2, 5]])");
  CHECK(explicit_demands.resolved_demands().size() == 2);
}

TEST_CASE("a run shorter than every failure is quiet") {
  Scenario s = janos(1, Mode::Sr);
  s.sim_hours = 0.001;
  const RunResult r = run(s);
  CHECK(r.report.events == 0);
  CHECK(r.report.availability == 1.0);
  CHECK(r.report.flaps_total == 0);
  CHECK(r.report.tp + r.report.fp + r.report.fn == 0);
}

TEST_CASE("runs are deterministic and seed-sensitive") {
  for (Mode m : {Mode::Sdn, Mode::Sr}) {
    const RunResult a = run(janos(5, m));
    const RunResult b = run(janos(5, m));
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(summary_json(janos(5, m), a) == summary_json(janos(5, m), b));
    CHECK(fingerprint(run(janos(6, m))) != fingerprint(a));
  }
}

TEST_CASE("batch output equals sequential output") {
  std::vector<Scenario> batch;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) batch.push_back(janos(seed, seed % 2 ? Mode::Sr : Mode::Sdn));
  Scenario broken = janos(9, Mode::Sr);
  broken.predictor.delta_t_l_s = 0.01;  // no time to swap
  batch.push_back(broken);

  const auto one = run_batch(batch, 1);
  const auto many = run_batch(batch, 3);
  REQUIRE(one.size() == batch.size());
  for (std::size_t i = 0; i + 1 < batch.size(); ++i) {
    REQUIRE(one[i].result);
    REQUIRE(many[i].result);
    CHECK(fingerprint(*one[i].result) == fingerprint(*many[i].result));
    CHECK(fingerprint(*one[i].result) == fingerprint(run(batch[i])));
  }
  CHECK_FALSE(one.back().result.has_value());
  CHECK(one.back().error.find("lead time") != std::string::npos);
  CHECK(many.back().error == one.back().error);
}

TEST_CASE("warning time must cover a swap") {
  Scenario s = janos(1, Mode::Sr);
  s.predictor.delta_t_l_s = 0.01;
  CHECK_THROWS_AS(run(s), ScenarioError);
  s.mode = Mode::Sdn;
  CHECK_NOTHROW(run(s));
}

TEST_CASE("trace structure") {
  const Scenario s = janos(3, Mode::Sr);
  const RunResult r = run(s);
  const double lead = s.predictor.lead_h();

  SUBCASE("every down has one later up, or the run ended first") {
    std::map<std::uint32_t, bool> down;
    for (const LinkEvent& e : r.traces.events) {
      const bool was_down = down[e.link.value];
      CHECK(was_down == (e.kind == Transition::Kind::Up));
      down[e.link.value] = e.kind == Transition::Kind::Down;
    }
  }
  SUBCASE("forecasts precede their failure by the lead time") {
    std::size_t genuine = 0;
    for (const AlarmRecord& a : r.traces.alarms) {
      if (a.alarm.truth != AlarmTruth::GenuineForecast) continue;
      ++genuine;
      bool found = false;
      for (const LinkEvent& e : r.traces.events) {
        if (e.kind == Transition::Kind::Down && e.link == a.alarm.link &&
            std::abs(e.t - (a.alarm.t + lead)) < 1e-9) {
          found = true;
        }
      }
      CHECK(found);
    }
    CHECK(genuine > 0);
  }
  SUBCASE("acted alarms resolve, ignored ones do not") {
    std::uint64_t tp = 0, fp = 0;
    for (const AlarmRecord& a : r.traces.alarms) {
      CHECK(a.resolution.has_value() == (a.action == AlarmAction::Rerouted));
      if (a.resolution) (*a.resolution == Resolution::TP ? tp : fp) += 1;
      if (a.alarm.truth == AlarmTruth::Injected && a.resolution) CHECK(*a.resolution == Resolution::FP);
    }
    CHECK(tp == r.report.tp);
    CHECK(fp == r.report.fp);
    CHECK(r.report.tp + r.report.fn == r.report.events);
  }
  SUBCASE("traces read back") {
    CHECK(events_jsonl(parse_events_jsonl(events_jsonl(r.traces.events))) == events_jsonl(r.traces.events));
    CHECK(alarms_jsonl(parse_alarms_jsonl(alarms_jsonl(r.traces.alarms))) == alarms_jsonl(r.traces.alarms));
    CHECK(routes_jsonl(parse_routes_jsonl(routes_jsonl(r.traces.routes))) == routes_jsonl(r.traces.routes));
    CHECK_THROWS_AS(parse_routes_jsonl("{\"t\": 1}\n"), std::invalid_argument);
  }
  SUBCASE("report is consistent") {
    CHECK(r.report.availability == doctest::Approx(1.0 - r.report.unavailability));
    CHECK(r.report.flaps_useless <= r.report.flaps_total);
    CHECK(r.report.flaps_useless % 2 == 0);
    CHECK(r.report.flaps_useless == 2 * r.detail.flaps.fp_revert);
    CHECK(r.report.unavailability == doctest::Approx((1.0 - r.report.recall) * r.detail.u_sdn));
  }
}

TEST_CASE("SDN mode has no predictor activity") {
  const RunResult r = run(janos(3, Mode::Sdn));
  CHECK(r.traces.alarms.empty());
  CHECK(r.report.tp + r.report.fp == 0);
  CHECK(r.report.fn == r.report.events);
  CHECK(r.report.flaps_useless == 0);
  CHECK(r.report.unavailability == r.detail.u_sdn);
}

TEST_CASE("the failure sequence does not depend on the mode") {
  const RunResult sdn = run(janos(8, Mode::Sdn));
  const RunResult sr = run(janos(8, Mode::Sr));
  CHECK(events_jsonl(sdn.traces.events) == events_jsonl(sr.traces.events));
  CHECK(sdn.detail.u_sdn == sr.detail.u_sdn);
}
