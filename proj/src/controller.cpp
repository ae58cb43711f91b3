#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smartroute/controller.hpp"

namespace smartroute {

std::string to_string(Mode m) { return m == Mode::Sdn ? "sdn" : "sr"; }

Mode parse_mode(const std::string& s) {
  if (s == "sdn") return Mode::Sdn;
  if (s == "sr") return Mode::Sr;
  throw std::invalid_argument("unknown mode '" + s + "' (expected sdn or sr)");
}

std::string to_string(RouteCause c) {
  switch (c) {
    case RouteCause::Fail: return "fail";
    case RouteCause::Repair: return "repair";
    case RouteCause::Alarm: return "alarm";
    case RouteCause::FpRevert: return "fp_revert";
  }
  return "?";
}

RouteCause parse_route_cause(const std::string& s) {
  if (s == "fail") return RouteCause::Fail;
  if (s == "repair") return RouteCause::Repair;
  if (s == "alarm") return RouteCause::Alarm;
  if (s == "fp_revert") return RouteCause::FpRevert;
  throw std::invalid_argument("unknown route-change cause '" + s + "'");
}

std::vector<Demand> all_pairs(const Topology& topology) {
  std::vector<Demand> out;
  const auto nodes = topology.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) out.push_back({nodes[i].id, nodes[j].id});
  }
  return out;
}

std::vector<FlowRoute> init_routes(const Topology& topology, const std::vector<Demand>& demands, Mode mode) {
  std::vector<FlowRoute> flows;
  flows.reserve(demands.size());
  for (const Demand& d : demands) {
    if (d.src == d.dst) throw TopologyError("demand " + std::to_string(flows.size()) + " has src == dst");
    auto sp = shortest_path(topology, d.src, d.dst);
    if (!sp) {
      throw TopologyError("demand " + std::to_string(d.src.value) + "->" + std::to_string(d.dst.value) +
                          " is unreachable");
    }
    FlowRoute f;
    f.id = static_cast<std::uint32_t>(flows.size());
    f.src = d.src;
    f.dst = d.dst;
    f.nominal_cost = sp->hops();
    if (mode == Mode::Sdn) {
      f.current = *sp;
    } else {
      DisjointPair pair = edge_disjoint_pair(topology, d.src, d.dst);
      f.current = std::move(pair.primary);
      f.disjoint_backup = std::move(pair.secondary);
    }
    f.reference = f.current;
    f.state = f.current.hops() > f.nominal_cost ? FlowState::Labeled : FlowState::Normal;
    flows.push_back(std::move(f));
  }
  return flows;
}

void TimingModel::validate() const {
  for (double v : {t_d_ms, t_sp_ms, t_update_ms}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("timing values must be non-negative");
  }
}

double convergence_time_ms(const TimingModel& timing, std::size_t rules) {
  return timing.t_d_ms + timing.t_sp_ms + static_cast<double>(rules) * timing.t_update_ms;
}

double reconfiguration_time_ms(const TimingModel& timing, std::size_t rules) {
  return timing.t_sp_ms + static_cast<double>(rules) * timing.t_update_ms;
}

void RiskConfig::validate() const {
  if (!(t_small_omega >= 0.0 && t_small_omega <= 1.0)) throw std::invalid_argument("risk.t_small_omega must be in [0, 1]");
}

Controller::Controller(const Topology& topology, std::vector<FlowRoute> flows, Mode mode, TimingModel timing,
                       RiskConfig risk)
    : topology_(topology),
      flows_(std::move(flows)),
      mode_(mode),
      timing_(timing),
      risk_(risk),
      down_(topology.link_count()) {
  timing_.validate();
  risk_.validate();
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    if (flows_[i].id != i) throw std::invalid_argument("flow ids must be 0..n-1 in order");
  }
}

std::set<std::uint32_t> Controller::lf() const {
  std::set<std::uint32_t> out;
  for (const FlowRoute& f : flows_) {
    if (f.state == FlowState::Labeled) out.insert(f.id);
  }
  return out;
}

std::set<std::uint32_t> Controller::tlf() const {
  std::set<std::uint32_t> out;
  for (const FlowRoute& f : flows_) {
    if (f.state == FlowState::Transient) out.insert(f.id);
  }
  return out;
}

bool Controller::path_up(const Path& p) const {
  return std::none_of(p.links.begin(), p.links.end(),
                      [&](LinkId l) { return down_.contains(topology_.link_index(l)); });
}

std::size_t Controller::unserviceable_count() const {
  return static_cast<std::size_t>(
      std::count_if(flows_.begin(), flows_.end(), [&](const FlowRoute& f) { return !f.serviceable || !path_up(f.current); }));
}

std::optional<std::size_t> Controller::current_shortest_cost(const FlowRoute& flow) const {
  const auto p = shortest_path(topology_, flow.src, flow.dst, down_);
  if (!p) return std::nullopt;
  return p->hops();
}

void Controller::label(FlowRoute& f) {
  const bool sub = !f.serviceable || f.current.hops() > f.nominal_cost;
  f.state = sub ? FlowState::Labeled : FlowState::Normal;
}

void Controller::move(double t, FlowRoute& f, Path to, RouteCause cause, std::optional<std::uint64_t> alarm,
                      bool make_before_break) {
  const std::size_t old_rules = f.current.nodes.size();
  const std::size_t new_rules = to.nodes.size();
  if (make_before_break) {
    rules_.push_back({t, f.id, RuleOp::Install, new_rules, cause});
    rules_.push_back({t, f.id, RuleOp::Remove, old_rules, cause});
  } else {
    rules_.push_back({t, f.id, RuleOp::Remove, old_rules, cause});
    rules_.push_back({t, f.id, RuleOp::Install, new_rules, cause});
  }
  // Proactive moves need no failure detection.
  const double tc = cause == RouteCause::Alarm || cause == RouteCause::FpRevert
                        ? reconfiguration_time_ms(timing_, old_rules + new_rules)
                        : convergence_time_ms(timing_, old_rules + new_rules);
  routes_.push_back({t, f.id, f.current.nodes, to.nodes, cause, alarm, tc});
  f.current = std::move(to);
}

FailureOutcome Controller::on_link_failure(double t, LinkId link) {
  const std::size_t li = topology_.link_index(link);
  if (down_.contains(li)) throw std::logic_error("link " + std::to_string(link.value) + " is already down");
  down_.insert(li);

  FailureOutcome out;
  for (FlowRoute& f : flows_) {
    if (!f.serviceable || !f.current.uses(link)) continue;
    ++out.affected;
    if (f.state == FlowState::Transient) {
      f.pre_swap.reset();
      f.swap_alarm.reset();
    }
    auto detour = shortest_path(topology_, f.src, f.dst, down_);
    if (!detour) {
      rules_.push_back({t, f.id, RuleOp::Remove, f.current.nodes.size(), RouteCause::Fail});
      f.serviceable = false;
      ++out.unserviceable;
    } else {
      move(t, f, std::move(*detour), RouteCause::Fail, std::nullopt, false);
      out.max_convergence_ms = std::max(out.max_convergence_ms, routes_.back().convergence_ms);
      ++out.flaps;
    }
    label(f);
  }
  return out;
}

std::size_t Controller::on_link_repair(double t, LinkId link) {
  const std::size_t li = topology_.link_index(link);
  if (!down_.contains(li)) throw std::logic_error("link " + std::to_string(link.value) + " is not down");
  down_.erase(li);

  std::vector<std::uint32_t> snapshot;
  for (const FlowRoute& f : flows_) {
    if (f.state == FlowState::Labeled) snapshot.push_back(f.id);
  }

  std::size_t flaps = 0;
  for (std::uint32_t id : snapshot) {
    FlowRoute& f = flows_[id];
    auto best = shortest_path(topology_, f.src, f.dst, down_);
    if (!best) continue;  // still cut off
    if (f.serviceable && f.current.hops() <= best->hops()) {
      label(f);
      continue;
    }
    Path target = path_up(f.reference) && f.reference.hops() == best->hops() ? f.reference : std::move(*best);
    if (!f.serviceable) {
      rules_.push_back({t, f.id, RuleOp::Install, target.nodes.size(), RouteCause::Repair});
      routes_.push_back({t, f.id, f.current.nodes, target.nodes, RouteCause::Repair, std::nullopt,
                         convergence_time_ms(timing_, target.nodes.size())});
      f.current = std::move(target);
      f.serviceable = true;
    } else {
      move(t, f, std::move(target), RouteCause::Repair, std::nullopt, true);
    }
    ++flaps;
    label(f);
  }

  if (down_.empty()) {
    for (const FlowRoute& f : flows_) {
      if (f.state == FlowState::Labeled) {
        throw std::logic_error("flow " + std::to_string(f.id) + " still labeled with every link up");
      }
    }
  }
  return flaps;
}

AlarmOutcome Controller::on_alarm(double t, const AlarmMessage& alarm, const RiskConfig& risk) {
  if (mode_ != Mode::Sr) throw std::logic_error("alarms are only handled in SR mode");
  if (!topology_.has_link(alarm.link)) {
    throw std::invalid_argument("alarm " + std::to_string(alarm.id) + " names unknown link " +
                                std::to_string(alarm.link.value));
  }
  const std::size_t li = topology_.link_index(alarm.link);
  if (down_.contains(li)) {
    throw std::invalid_argument("alarm " + std::to_string(alarm.id) + " names link " +
                                std::to_string(alarm.link.value) + " which is already down");
  }

  std::vector<std::uint32_t> pf_r;
  for (const FlowRoute& f : flows_) {
    if (f.serviceable && f.current.uses(alarm.link)) pf_r.push_back(f.id);
  }

  AlarmOutcome out;
  out.affected = pf_r.size();
  out.consequence = flows_.empty() ? 0.0 : flow_betweenness(pf_r.size(), flows_.size());
  out.risk = alarm.probability * out.consequence;
  if (out.risk < risk.t_small_omega) return out;

  out.action = AlarmAction::Rerouted;
  auto& swapped = acted_[alarm.id];
  for (std::uint32_t id : pf_r) {
    FlowRoute& f = flows_[id];
    if (f.state != FlowState::Normal || !f.disjoint_backup) continue;
    const Path& b2 = *f.disjoint_backup;
    if (b2 == f.current || b2.uses(alarm.link) || !path_up(b2)) continue;
    f.pre_swap = f.current;
    f.swap_alarm = alarm.id;
    move(t, f, b2, RouteCause::Alarm, alarm.id, true);
    f.state = FlowState::Transient;
    swapped.push_back(id);
    ++out.flaps;
  }
  return out;
}

std::size_t Controller::on_alarm_resolution(double t, std::uint64_t alarm_id, Resolution resolution) {
  const auto it = acted_.find(alarm_id);
  if (it == acted_.end()) throw std::logic_error("resolution for alarm " + std::to_string(alarm_id) + " that was not acted on");
  const std::vector<std::uint32_t> swapped = std::move(it->second);
  acted_.erase(it);

  std::size_t flaps = 0;
  for (std::uint32_t id : swapped) {
    FlowRoute& f = flows_[id];
    // A failure on the backup may already have moved the flow out of TLF.
    if (f.state != FlowState::Transient || f.swap_alarm != alarm_id) continue;
    if (resolution == Resolution::FP) {
      std::optional<Path> target;
      if (f.pre_swap && path_up(*f.pre_swap)) {
        target = f.pre_swap;
      } else {
        target = shortest_path(topology_, f.src, f.dst, down_);
      }
      if (target && *target != f.current) {
        move(t, f, std::move(*target), RouteCause::FpRevert, alarm_id, true);
        ++flaps;
      }
    }
    f.pre_swap.reset();
    f.swap_alarm.reset();
    label(f);
  }
  return flaps;
}

}  // namespace smartroute
