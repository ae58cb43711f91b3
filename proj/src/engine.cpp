#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "smartroute/engine.hpp"
#include "smartroute/predictor.hpp"

namespace smartroute {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::LinkUp: return "up";
    case EventKind::LinkDown: return "down";
    case EventKind::Alarm: return "alarm";
    case EventKind::AlarmResolution: return "resolution";
  }
  return "?";
}

std::string run_id(const Scenario& scenario) {
  return scenario.topology->name() + "-" + to_string(scenario.mode) + "-s" + std::to_string(scenario.seed);
}

namespace {

// Alarm-kind entries are either a scheduled forecast or an injection slot.
enum class AlarmSource { Forecast = 0, Injection = 1 };
using Pending = std::tuple<double, int, int, std::uint64_t>;  // t, kind, source, id

struct LiveAlarm {
  std::uint64_t id;
  bool matched;
};

void check_warning_time(const Scenario& s, const std::vector<FlowRoute>& flows) {
  if (s.mode != Mode::Sr || !s.predictor.enabled) return;
  std::size_t rules = 0;
  for (const FlowRoute& f : flows) {
    if (f.disjoint_backup) rules = std::max(rules, f.current.nodes.size() + f.disjoint_backup->nodes.size());
  }
  const double need_ms = reconfiguration_time_ms(s.timing, rules);
  if (need_ms >= s.predictor.delta_t_l_s * 1000.0) {
    throw ScenarioError("lead time " + std::to_string(s.predictor.delta_t_l_s) + " s is shorter than the " +
                        std::to_string(need_ms / 1000.0) + " s a swap needs");
  }
}

std::uint64_t count_no(const std::vector<FlowRoute>& flows, const Topology& topo, const LinkQueue& queue) {
  return static_cast<std::uint64_t>(std::count_if(flows.begin(), flows.end(), [&](const FlowRoute& f) {
    return !serviceable(f, topo, queue);
  }));
}

}  // namespace

RunResult run(const Scenario& scenario, const RunObserver& observer) {
  scenario.validate();
  const Topology& topo = *scenario.topology;
  const std::uint64_t seed = scenario.seed;
  const double compression = scenario.time_compression;

  Rng gamma_rng = make_stream(seed, Stream::Gamma);
  LinkQueue queue(make_link_records(topo, scenario.gamma_lo, scenario.gamma_hi, gamma_rng));
  Rng fail_rng = make_stream(seed, Stream::Failure);
  Rng repair_rng = make_stream(seed, Stream::Repair);
  LinkLifeCycle life(
      queue, [&](const LinkRecord& r) { return sample_time_to_failure(r.mtbf_h, fail_rng) / compression; },
      [&](const LinkRecord& r) { return sample_time_to_recover(r.mttr_h, repair_rng) / compression; });
  life.schedule_all(0.0);

  const std::vector<Demand> demands = scenario.resolved_demands();
  std::vector<FlowRoute> flows = init_routes(topo, demands, scenario.mode);
  check_warning_time(scenario, flows);
  Controller ctl(topo, std::move(flows), scenario.mode, scenario.timing, scenario.risk);

  // U_SDN is measured on shortest-path routing. In SR mode a shadow SDN
  // controller sees the same failure sequence, which does not depend on
  // the routing mode.
  std::optional<Controller> shadow;
  if (scenario.mode == Mode::Sr) {
    shadow.emplace(topo, init_routes(topo, demands, Mode::Sdn), Mode::Sdn, scenario.timing, scenario.risk);
  }
  const Controller& sdn_view = shadow ? *shadow : ctl;

  PredictorConfig pcfg = scenario.predictor;
  pcfg.enabled = pcfg.enabled && scenario.mode == Mode::Sr;
  Predictor predictor(pcfg, seed, scenario.sim_hours);
  const double window = pcfg.window_h();

  RunResult result;
  RunDetail& detail = result.detail;
  RunTraces& traces = result.traces;
  PredictionLedger ledger;
  std::vector<FailureEvent> failures;
  std::map<std::uint64_t, AlarmMessage> alarms;     // scheduled or acted, by id
  std::map<std::uint64_t, std::size_t> alarm_rows;  // id -> traces.alarms index
  std::map<std::size_t, LiveAlarm> live;            // link index -> acted, unresolved alarm
  std::set<Pending> pending;

  const auto slots = predictor.injection_slots(scenario.sim_hours);
  detail.injection_slots = slots.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    pending.emplace(slots[i], static_cast<int>(EventKind::Alarm), static_cast<int>(AlarmSource::Injection), i);
  }

  const auto poll = [&](double now) {
    if (auto m = predictor.poll(queue, now)) {
      alarms.emplace(m->id, *m);
      pending.emplace(m->t, static_cast<int>(EventKind::Alarm), static_cast<int>(AlarmSource::Forecast), m->id);
    }
  };

  const auto handle_alarm = [&](double now, const AlarmMessage& m) {
    ++detail.alarms_emitted;
    if (m.truth == AlarmTruth::Injected) ++detail.alarms_injected;
    const AlarmOutcome out = ctl.on_alarm(now, m);
    alarm_rows[m.id] = traces.alarms.size();
    traces.alarms.push_back({m, out.action, out.risk, std::nullopt});
    if (out.action == AlarmAction::Rerouted) {
      live[m.link_index] = {m.id, false};
      pending.emplace(m.t + window, static_cast<int>(EventKind::AlarmResolution), 0, m.id);
    } else {
      ++detail.alarms_ignored;
      predictor.release(m.link_index);
      alarms.erase(m.id);
    }
  };

  poll(0.0);
  while (true) {
    const auto next_link = life.peek();
    const bool link_first =
        next_link && (pending.empty() || std::make_tuple(next_link->t, next_link->kind == Transition::Kind::Up ? 0 : 1) <
                                             std::make_tuple(std::get<0>(*pending.begin()), std::get<1>(*pending.begin())));
    EngineEvent ev;
    if (link_first) {
      if (next_link->t > scenario.sim_hours) break;
      const Transition tr = life.apply_next();
      const Link& link = topo.link_at(tr.link);
      ev = {tr.t, tr.kind == Transition::Kind::Up ? EventKind::LinkUp : EventKind::LinkDown, tr.link};
      if (tr.kind == Transition::Kind::Up) {
        traces.events.push_back({tr.t, Transition::Kind::Up, link.id});
        ctl.on_link_repair(tr.t, link.id);
        if (shadow) shadow->on_link_repair(tr.t, link.id);
      } else {
        traces.events.push_back({tr.t, Transition::Kind::Down, link.id});
        failures.push_back({link.id, tr.t, queue.record(tr.link).next_up});
        // "No" counts at the instant of failure, before any recovery.
        detail.no_counts_sdn.push_back(count_no(sdn_view.flows(), topo, queue));
        detail.no_counts_run.push_back(count_no(ctl.flows(), topo, queue));
        const auto it = live.find(tr.link);
        if (it != live.end() && !it->second.matched) {
          it->second.matched = true;
          ctl.on_link_failure(tr.t, link.id);
        } else {
          ledger.record_missed_failure();
          ctl.on_unpredicted_failure(tr.t, link.id);
        }
        if (shadow) shadow->on_link_failure(tr.t, link.id);
      }
      poll(tr.t);
    } else {
      if (pending.empty()) break;
      const auto [t, kind, source, id] = *pending.begin();
      if (t > scenario.sim_hours) break;
      pending.erase(pending.begin());
      ev = {t, static_cast<EventKind>(kind), id};
      if (static_cast<EventKind>(kind) == EventKind::Alarm) {
        if (static_cast<AlarmSource>(source) == AlarmSource::Forecast) {
          handle_alarm(t, alarms.at(id));
        } else if (auto m = predictor.inject(queue, t)) {
          alarms.emplace(m->id, *m);
          ev.payload = m->id;
          handle_alarm(t, *m);
        }
      } else {
        const AlarmMessage m = alarms.at(id);
        const Resolution r = resolve(m, failures, window, ledger);
        const LiveAlarm la = live.at(m.link_index);
        if ((r == Resolution::TP) != la.matched) {
          throw std::logic_error("alarm " + std::to_string(id) + ": window verdict disagrees with failure matching");
        }
        live.erase(m.link_index);
        predictor.release(m.link_index);
        alarms.erase(id);
        traces.alarms[alarm_rows.at(id)].resolution = r;
        ctl.on_alarm_resolution(t, id, r);
      }
    }
    if (observer) observer(ev, ctl, queue, ledger);
  }

  traces.routes = ctl.route_log();
  traces.rules = ctl.rule_log();

  RunReport& rep = result.report;
  rep.run_id = run_id(scenario);
  rep.seed = seed;
  rep.topology = topo.name();
  rep.mode = scenario.mode;
  rep.sim_hours = scenario.sim_hours;
  rep.events = failures.size();
  rep.flows = ctl.flows().size();
  rep.tp = ledger.tp;
  rep.fp = ledger.fp;
  rep.fn = ledger.fn;
  const RecallPrecision rp = recall_precision(ledger);
  rep.recall = rp.recall;
  rep.precision = rp.precision;

  const bool measurable = rep.events > 0 && rep.flows > 0;
  detail.u_sdn = measurable ? u_sdn(detail.no_counts_sdn, rep.flows) : 0.0;
  detail.u_run_trace = measurable ? u_sdn(detail.no_counts_run, rep.flows) : 0.0;
  rep.unavailability = scenario.mode == Mode::Sdn ? detail.u_sdn : u_sr(rep.recall, detail.u_sdn);
  rep.availability = availability(rep.unavailability);

  detail.flaps = rf_totals(traces.routes, scenario.mode);
  rep.flaps_total = detail.flaps.total;
  rep.flaps_useless = detail.flaps.useless;
  for (const RouteChange& r : traces.routes) {
    detail.convergence_ms_total += r.convergence_ms;
    detail.convergence_ms_max = std::max(detail.convergence_ms_max, r.convergence_ms);
  }
  return result;
}

std::vector<BatchItem> run_batch(const std::vector<Scenario>& scenarios, std::size_t parallelism) {
  std::vector<BatchItem> items(scenarios.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        items[i].result = run(scenarios[i]);
      } catch (const std::exception& e) {
        items[i].error = e.what();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(parallelism, scenarios.size()));
  if (n == 1) {
    worker();
    return items;
  }
  std::vector<std::thread> threads;
  threads.reserve(n);
  for (std::size_t k = 0; k < n; ++k) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return items;
}

std::string summary_json(const Scenario& scenario, const RunResult& result) {
  using ojson = nlohmann::ordered_json;
  const RunReport& r = result.report;
  const RunDetail& d = result.detail;
  ojson j;
  j["run_id"] = r.run_id;
  j["report"] = {{"seed", r.seed},
                 {"topology", r.topology},
                 {"mode", to_string(r.mode)},
                 {"sim_hours", r.sim_hours},
                 {"events", r.events},
                 {"flows", r.flows},
                 {"availability", r.availability},
                 {"unavailability", r.unavailability},
                 {"flaps_total", r.flaps_total},
                 {"flaps_useless", r.flaps_useless},
                 {"tp", r.tp},
                 {"fp", r.fp},
                 {"fn", r.fn},
                 {"recall", r.recall},
                 {"precision", r.precision}};
  j["unavailability"] = {{"u_sdn", d.u_sdn},
                         {"u_sr_eq10", u_sr(r.recall, d.u_sdn)},
                         {"u_run_trace", d.u_run_trace}};
  j["flaps"] = {{"total", d.flaps.total},
                {"useless", d.flaps.useless},
                {"fail", d.flaps.fail},
                {"repair", d.flaps.repair},
                {"alarm", d.flaps.alarm},
                {"fp_revert", d.flaps.fp_revert}};
  j["alarms"] = {{"emitted", d.alarms_emitted},
                 {"injected", d.alarms_injected},
                 {"ignored", d.alarms_ignored},
                 {"injection_slots", d.injection_slots}};
  j["convergence_ms"] = {{"total", d.convergence_ms_total}, {"max", d.convergence_ms_max}};
  j["time_compression"] = scenario.time_compression;
  j["scenario"] = ojson::parse(scenario_json(scenario));
  return j.dump(2) + "\n";
}

}  // namespace smartroute
