#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smartroute/controller.hpp"
#include "smartroute/failmodel.hpp"
#include "smartroute/metrics.hpp"
#include "smartroute/scenario.hpp"
#include "smartroute/trace.hpp"

namespace smartroute {

/// Intra-timestamp order: a repair settles before a failure at the same
/// instant, and both before alarms and their resolutions.
enum class EventKind { LinkUp = 0, LinkDown = 1, Alarm = 2, AlarmResolution = 3 };
std::string to_string(EventKind k);

struct EngineEvent {
  double t{};
  EventKind kind{EventKind::LinkDown};
  std::uint64_t payload{};  // link index, or alarm id / injection slot
};

struct RunTraces {
  std::vector<LinkEvent> events;
  std::vector<AlarmRecord> alarms;
  std::vector<RouteChange> routes;
  std::vector<RuleUpdate> rules;
};

/// Numbers that do not fit the summary CSV.
struct RunDetail {
  std::vector<std::uint64_t> no_counts_sdn;  // per failure, shortest-path routing
  std::vector<std::uint64_t> no_counts_run;  // per failure, this run's controller
  double u_sdn{};
  double u_run_trace{};  // U over this run's own counts
  FlapTotals flaps;
  std::uint64_t alarms_emitted{};
  std::uint64_t alarms_injected{};
  std::uint64_t alarms_ignored{};
  std::uint64_t injection_slots{};
  double convergence_ms_total{};
  double convergence_ms_max{};
};

struct RunResult {
  RunReport report;
  RunTraces traces;
  RunDetail detail;
};

/// Called after every processed event with the state it left behind.
using RunObserver =
    std::function<void(const EngineEvent&, const Controller&, const LinkQueue&, const PredictionLedger&)>;

/// One simulation run. Deterministic in (scenario, seed). Throws
/// ScenarioError for invalid scenarios.
RunResult run(const Scenario& scenario, const RunObserver& observer = {});

struct BatchItem {
  std::optional<RunResult> result;
  std::string error;
};

/// Runs scenarios on up to `parallelism` threads; results in input order.
/// A failing scenario yields an item with `error` set; the rest still run.
std::vector<BatchItem> run_batch(const std::vector<Scenario>& scenarios, std::size_t parallelism);

std::string run_id(const Scenario& scenario);

/// summary.json content: report, detail and the effective scenario.
std::string summary_json(const Scenario& scenario, const RunResult& result);

}  // namespace smartroute
