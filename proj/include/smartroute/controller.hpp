#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smartroute/graph.hpp"
#include "smartroute/predictor.hpp"
#include "smartroute/spf.hpp"

namespace smartroute {

enum class Mode { Sdn, Sr };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct Demand {
  NodeId src;
  NodeId dst;
};

/// Every unordered node pair once, (lower id, higher id), in id order.
std::vector<Demand> all_pairs(const Topology& topology);

/// Normal: on a path of optimal cost. Labeled: in LF, sub-optimal or
/// without service. Transient: in TLF, swapped by an alarm and waiting for
/// its resolution.
enum class FlowState { Normal, Labeled, Transient };
enum class Optimality { Optimal, SubOptimal };

struct FlowRoute {
  std::uint32_t id{};
  NodeId src;
  NodeId dst;
  Path current;
  bool serviceable{true};
  FlowState state{FlowState::Normal};
  std::optional<Path> disjoint_backup;  // flow_b2, SR only
  Path reference;                       // preferred path in the healthy network
  std::size_t nominal_cost{};           // shortest hop count with every link up
  std::optional<Path> pre_swap;         // path held before an alarm swap
  std::optional<std::uint64_t> swap_alarm;

  Optimality optimality() const {
    return state == FlowState::Labeled ? Optimality::SubOptimal : Optimality::Optimal;
  }
};

/// SDN: each demand on its shortest path. SR: each demand on the Bhandari
/// primary with the secondary kept as disjoint backup. A demand whose
/// primary is longer than the shortest path starts labeled.
/// Throws TopologyError for unknown endpoints or src == dst.
std::vector<FlowRoute> init_routes(const Topology& topology, const std::vector<Demand>& demands, Mode mode);

/// Controller latencies, in milliseconds.
struct TimingModel {
  double t_d_ms{50.0};
  double t_sp_ms{10.0};
  double t_update_ms{11.0};

  void validate() const;
};

/// T_C = T_D + T_SP + rules * t_update.
double convergence_time_ms(const TimingModel& timing, std::size_t rules);

/// Warning time a proactive swap needs: path computation plus rewriting
/// `rules` entries. Detection is not needed since the alarm is the trigger.
double reconfiguration_time_ms(const TimingModel& timing, std::size_t rules);

struct RiskConfig {
  double t_small_omega{0.1};

  void validate() const;
};

enum class RouteCause { Fail, Repair, Alarm, FpRevert };
std::string to_string(RouteCause c);
RouteCause parse_route_cause(const std::string& s);

/// One routing flap: one flow moved from one path to another.
struct RouteChange {
  double t{};
  std::uint32_t flow{};
  std::vector<NodeId> from;
  std::vector<NodeId> to;
  RouteCause cause{RouteCause::Fail};
  std::optional<std::uint64_t> alarm;
  double convergence_ms{};
};

enum class RuleOp { Install, Remove };

/// Flow-table update for one path; `rules` is one entry per path node.
struct RuleUpdate {
  double t{};
  std::uint32_t flow{};
  RuleOp op{RuleOp::Install};
  std::size_t rules{};
  RouteCause cause{RouteCause::Fail};
};

struct FailureOutcome {
  std::size_t affected{};
  std::size_t flaps{};
  std::size_t unserviceable{};
  double max_convergence_ms{};
};

enum class AlarmAction { Rerouted, Ignored };

struct AlarmOutcome {
  AlarmAction action{AlarmAction::Ignored};
  double consequence{};
  double risk{};
  std::size_t affected{};
  std::size_t flaps{};
};

/// Operational Routes table plus the recovery logic.
class Controller {
 public:
  Controller(const Topology& topology, std::vector<FlowRoute> flows, Mode mode, TimingModel timing = {},
             RiskConfig risk = {});

  Mode mode() const { return mode_; }
  const Topology& topology() const { return topology_; }
  const std::vector<FlowRoute>& flows() const { return flows_; }
  const FlowRoute& flow(std::uint32_t id) const { return flows_.at(id); }
  std::set<std::uint32_t> lf() const;
  std::set<std::uint32_t> tlf() const;
  bool link_up(std::size_t link_index) const { return !down_.contains(link_index); }
  const LinkSet& down_links() const { return down_; }

  const std::vector<RouteChange>& route_log() const { return routes_; }
  const std::vector<RuleUpdate>& rule_log() const { return rules_; }
  std::size_t flaps() const { return routes_.size(); }

  /// Flows that are unserviceable or whose path crosses a down link.
  std::size_t unserviceable_count() const;

  /// Shortest-path recovery for every serviceable flow crossing the link,
  /// which is marked down first.
  FailureOutcome on_link_failure(double t, LinkId link);

  /// Same recovery; kept separate so callers can tell forecast and
  /// unforecast failures apart.
  FailureOutcome on_unpredicted_failure(double t, LinkId link) { return on_link_failure(t, link); }

  /// Marks the link up and re-examines a snapshot of LF.
  std::size_t on_link_repair(double t, LinkId link);

  /// Risk-gated proactive swap onto disjoint backups. Throws
  /// std::invalid_argument for an unknown or down link, std::logic_error in
  /// SDN mode.
  AlarmOutcome on_alarm(double t, const AlarmMessage& alarm, const RiskConfig& risk);
  AlarmOutcome on_alarm(double t, const AlarmMessage& alarm) { return on_alarm(t, alarm, risk_); }

  /// TP: swapped flows stay where they are. FP: swapped flows revert.
  /// Throws std::logic_error for an alarm that was not acted upon.
  std::size_t on_alarm_resolution(double t, std::uint64_t alarm_id, Resolution resolution);

  /// Cost the shortest path between the flow's endpoints has right now.
  std::optional<std::size_t> current_shortest_cost(const FlowRoute& flow) const;

 private:
  bool path_up(const Path& p) const;
  void label(FlowRoute& f);
  void move(double t, FlowRoute& f, Path to, RouteCause cause, std::optional<std::uint64_t> alarm,
            bool make_before_break);

  const Topology& topology_;
  std::vector<FlowRoute> flows_;
  Mode mode_;
  TimingModel timing_;
  RiskConfig risk_;
  LinkSet down_;
  std::vector<RouteChange> routes_;
  std::vector<RuleUpdate> rules_;
  std::map<std::uint64_t, std::vector<std::uint32_t>> acted_;  // alarm id -> swapped flows
};

}  // namespace smartroute
