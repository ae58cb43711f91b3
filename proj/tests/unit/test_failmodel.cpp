#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "smartroute/failmodel.hpp"

using namespace smartroute;

namespace {

LinkRecord rec(std::uint32_t id, std::uint64_t f_count = 0, double next_f = 0.0) {
  LinkRecord r;
  r.id = LinkId{id};
  r.f_count = f_count;
  r.next_f = next_f;
  r.mtbf_h = 100.0;
  r.mttr_h = 1.0;
  r.length_km = 1.0;
  return r;
}

double share_sum(const LinkQueue& q) {
  double s = 0.0;
  for (std::size_t i : q.ordered()) s += q.record(i).probability_f;
  return s;
}

}  // namespace

TEST_CASE("mtbf") {
  CHECK(mtbf_hours(145.0, 145.0) == 8760.0);
  CHECK(mtbf_hours(36.0, 36.0) == 8760.0);
  CHECK(mtbf_hours(145.0, 1127.0) == doctest::Approx(1127.06).epsilon(1e-5));
  CHECK(mtbf_hours(36.0, 236.0) == doctest::Approx(1336.27).epsilon(1e-5));
  CHECK_THROWS_AS(mtbf_hours(0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(mtbf_hours(10.0, -1.0), std::invalid_argument);
}

TEST_CASE("mttr") {
  CHECK(mttr_hours(0.01, 100.0) == doctest::Approx(1.0));
  CHECK(mttr_hours(0.02, 145.0) == doctest::Approx(2.9));
  CHECK(mttr_hours(0.01, 300.0) != mttr_hours(0.03, 300.0));
  CHECK_THROWS_AS(mttr_hours(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("lognormal repair parameters") {
  const LognormalParams p = repair_lognormal(10.0);
  CHECK(p.mu == doctest::Approx(2.148843).epsilon(1e-6));
  CHECK(p.sigma == doctest::Approx(0.554513).epsilon(1e-6));
  // Closed-form mean exp(mu + sigma^2 / 2) recovers MTTR.
  for (double m : {0.4, 3.0, 10.0, 56.0}) {
    const LognormalParams q = repair_lognormal(m);
    CHECK(std::exp(q.mu + q.sigma * q.sigma / 2.0) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("samplers") {
  Rng rng(42);
  constexpr int kN = 100000;
  double sum_f = 0.0;
  double sum_r = 0.0;
  bool positive = true;
  for (int i = 0; i < kN; ++i) {
    const double f = sample_time_to_failure(100.0, rng);
    const double r = sample_time_to_recover(10.0, rng);
    positive = positive && f > 0.0 && r > 0.0;
    sum_f += f;
    sum_r += r;
  }
  CHECK(positive);
  CHECK(std::abs(sum_f / kN - 100.0) <= 2.0);
  CHECK(std::abs(sum_r / kN - 10.0) <= 0.3);

  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(sample_time_to_failure(50.0, a) == sample_time_to_failure(50.0, b));
}

TEST_CASE("failure share") {
  CHECK(failure_share(0, 0) == 0.0);
  CHECK(failure_share(1, 4) == 0.25);
  SUBCASE("uniform counts") {
    LinkQueue q({rec(0, 1, 1), rec(1, 1, 2), rec(2, 1, 3), rec(3, 1, 4)});
    for (std::size_t i = 0; i < 4; ++i) CHECK(q.record(i).probability_f == 0.25);
  }
  SUBCASE("no history") {
    LinkQueue q({rec(0, 0, 1), rec(1, 0, 2)});
    CHECK(q.record(0).probability_f == 0.0);
    CHECK(share_sum(q) == 0.0);
  }
  SUBCASE("uneven counts") {
    LinkQueue q({rec(0, 3, 1), rec(1, 1, 2), rec(2, 1, 3)});
    CHECK(q.record(0).probability_f == doctest::Approx(0.6));
    CHECK(q.record(1).probability_f == doctest::Approx(0.2));
    CHECK(share_sum(q) == doctest::Approx(1.0));
  }
}

TEST_CASE("queue order and state") {
  LinkQueue q({rec(0, 0, 4.0), rec(1, 0, 3.0)});
  CHECK(q.head() == 1u);
  q.fail(1, 5.0);
  CHECK_FALSE(q.contains(1));
  CHECK(q.record(1).status == LinkStatus::Faulty);
  CHECK(q.record(1).f_count == 1);
  CHECK(q.record(1).probability_f == 0.0);
  CHECK(q.head() == 0u);
  CHECK_THROWS_AS(q.fail(1, 6.0), std::logic_error);
  q.repair(1, 9.0);
  CHECK(q.contains(1));
  CHECK(q.record(1).f_count == 1);  // history survives re-enqueueing
  CHECK(q.record(1).probability_f == 1.0);
  CHECK(q.ordered() == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(q.repair(1, 9.0), std::logic_error);
}

TEST_CASE("one full life cycle") {
  LinkQueue q({rec(0)});
  LinkLifeCycle life(
      q, [](const LinkRecord&) { return 5.0; }, [](const LinkRecord&) { return 2.0; });
  life.schedule_all(0.0);
  CHECK(q.record(0).next_f == 5.0);
  CHECK(life.advance(4.99).empty());
  const auto down = life.advance(5.0);
  REQUIRE(down.size() == 1);
  CHECK(down[0] == Transition{5.0, Transition::Kind::Down, 0});
  CHECK(q.record(0).status == LinkStatus::Faulty);
  CHECK(q.record(0).next_up == 7.0);
  const auto up = life.advance(7.0);
  REQUIRE(up.size() == 1);
  CHECK(up[0] == Transition{7.0, Transition::Kind::Up, 0});
  CHECK(q.contains(0));
  CHECK(q.record(0).next_f == 12.0);
}

TEST_CASE("dequeue order follows next_f") {
  LinkQueue q({rec(0), rec(1)});
  LinkLifeCycle life(
      q, [](const LinkRecord& r) { return r.id.value == 0 ? 4.0 : 3.0; }, [](const LinkRecord&) { return 100.0; });
  life.schedule_all(0.0);
  const auto t = life.advance(10.0);
  REQUIRE(t.size() == 2);
  CHECK(t[0].link == 1);
  CHECK(t[1].link == 0);
}

TEST_CASE("repair wins a tie with a failure") {
  LinkQueue q({rec(0), rec(1)});
  LinkLifeCycle life(
      q, [](const LinkRecord& r) { return r.id.value == 0 ? 1.0 : 3.0; }, [](const LinkRecord&) { return 2.0; });
  life.schedule_all(0.0);
  life.apply_next();  // link 0 down at 1, up at 3
  const auto next = life.peek();
  REQUIRE(next);
  CHECK(next->kind == Transition::Kind::Up);
  CHECK(next->t == 3.0);
}

TEST_CASE("long-run failure rate and queue invariants") {
  const Topology t = oracle::to_topology(oracle::random_connected(10, 0.3, 9));
  Rng g(1), f(2), r(3);
  LinkQueue q(make_link_records(t, 0.01, 0.05, g));
  LinkLifeCycle life(
      q, [&](const LinkRecord& x) { return sample_time_to_failure(x.mtbf_h, f); },
      [&](const LinkRecord& x) { return sample_time_to_recover(x.mttr_h, r); });
  life.schedule_all(0.0);

  constexpr double kHorizon = 2.0e6;
  std::map<std::size_t, std::uint64_t> downs;
  bool consistent = true;
  while (life.peek() && life.peek()->t <= kHorizon) {
    const Transition tr = life.apply_next();
    if (tr.kind == Transition::Kind::Down) ++downs[tr.link];
    const double s = share_sum(q);
    consistent = consistent && (s == 0.0 || std::abs(s - 1.0) < 1e-9);
    const std::vector<std::size_t> order = q.ordered();
    for (std::size_t i = 0; i < q.link_count(); ++i) {
      const bool enq = std::find(order.begin(), order.end(), i) != order.end();
      consistent = consistent && (enq == (q.record(i).status == LinkStatus::Operational));
    }
  }
  CHECK(consistent);
  double total_downs = 0.0, total_expect = 0.0;
  for (std::size_t i = 0; i < q.link_count(); ++i) {
    const LinkRecord& x = q.record(i);
    CHECK(x.f_count == downs[i]);
    const double expect = kHorizon / (x.mtbf_h + x.mttr_h);
    // Renewal count: within four standard deviations of the mean.
    CHECK(std::abs(static_cast<double>(downs[i]) - expect) < 4.0 * std::sqrt(expect));
    total_downs += static_cast<double>(downs[i]);
    total_expect += expect;
  }
  CHECK(total_downs == doctest::Approx(total_expect).epsilon(0.05));
}

TEST_CASE("link records") {
  const Topology t = oracle::to_topology({3, {{0, 1}, {1, 2}}});
  Rng g(5);
  const auto recs = make_link_records(t, 0.01, 0.05, g);
  REQUIRE(recs.size() == 2);
  for (const LinkRecord& r : recs) {
    CHECK(r.mtbf_h == 8760.0);  // all unit lengths: every link is the shortest
    CHECK(r.gamma >= 0.01);
    CHECK(r.gamma <= 0.05);
    CHECK(r.mttr_h == doctest::Approx(r.gamma * r.length_km));
  }
  Rng bad(1);
  CHECK_THROWS_AS(make_link_records(t, 0.05, 0.01, bad), std::invalid_argument);
}
