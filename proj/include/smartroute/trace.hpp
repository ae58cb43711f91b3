#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smartroute/controller.hpp"
#include "smartroute/failmodel.hpp"
#include "smartroute/predictor.hpp"

namespace smartroute {

struct LinkEvent {
  double t{};
  Transition::Kind kind{Transition::Kind::Down};
  LinkId link;
};

/// An alarm as seen through the run: the controller's decision and, for
/// alarms it acted on, the TP/FP verdict. Ignored alarms stay unresolved.
struct AlarmRecord {
  AlarmMessage alarm;
  AlarmAction action{AlarmAction::Ignored};
  double risk{};
  std::optional<Resolution> resolution;
};

// One JSON object per line, newline-terminated.
std::string events_jsonl(std::span<const LinkEvent> events);
std::string alarms_jsonl(std::span<const AlarmRecord> alarms);
std::string routes_jsonl(std::span<const RouteChange> routes);

// Readers throw std::invalid_argument naming the line on bad input.
std::vector<LinkEvent> parse_events_jsonl(const std::string& text);
std::vector<AlarmRecord> parse_alarms_jsonl(const std::string& text);
std::vector<RouteChange> parse_routes_jsonl(const std::string& text);

}  // namespace smartroute
