#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "smartroute/trace.hpp"

namespace smartroute {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::uint32_t> ids(const std::vector<NodeId>& nodes) {
  std::vector<std::uint32_t> out;
  out.reserve(nodes.size());
  for (NodeId n : nodes) out.push_back(n.value);
  return out;
}

std::vector<NodeId> nodes_of(const nlohmann::json& arr) {
  std::vector<NodeId> out;
  for (const auto& v : arr) out.push_back(NodeId{v.get<std::uint32_t>()});
  return out;
}

template <typename Fn>
void for_each_line(const std::string& text, const char* what, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string(what) + " trace line " + std::to_string(n) + ": " + e.what());
    }
  }
}

}  // namespace

std::string events_jsonl(std::span<const LinkEvent> events) {
  std::string out;
  for (const LinkEvent& e : events) {
    ojson j;
    j["t"] = e.t;
    j["kind"] = e.kind == Transition::Kind::Down ? "down" : "up";
    j["link"] = e.link.value;
    out += j.dump() + "\n";
  }
  return out;
}

std::string alarms_jsonl(std::span<const AlarmRecord> alarms) {
  std::string out;
  for (const AlarmRecord& a : alarms) {
    ojson j;
    j["t"] = a.alarm.t;
    j["link"] = a.alarm.link.value;
    j["resolution"] = a.resolution ? ojson(to_string(*a.resolution)) : ojson(nullptr);
    j["id"] = a.alarm.id;
    j["probability"] = a.alarm.probability;
    j["risk"] = a.risk;
    j["action"] = a.action == AlarmAction::Rerouted ? "rerouted" : "ignored";
    j["truth"] = a.alarm.truth == AlarmTruth::GenuineForecast ? "forecast" : "injected";
    out += j.dump() + "\n";
  }
  return out;
}

std::string routes_jsonl(std::span<const RouteChange> routes) {
  std::string out;
  for (const RouteChange& r : routes) {
    ojson j;
    j["t"] = r.t;
    j["flow"] = r.flow;
    j["from"] = ids(r.from);
    j["to"] = ids(r.to);
    j["cause"] = to_string(r.cause);
    if (r.alarm) j["alarm"] = *r.alarm;
    j["convergence_ms"] = r.convergence_ms;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<LinkEvent> parse_events_jsonl(const std::string& text) {
  std::vector<LinkEvent> out;
  for_each_line(text, "event", [&](const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "down" && kind != "up") throw std::invalid_argument("kind must be down or up");
    out.push_back({j.at("t").get<double>(), kind == "down" ? Transition::Kind::Down : Transition::Kind::Up,
                   LinkId{j.at("link").get<std::uint32_t>()}});
  });
  return out;
}

std::vector<AlarmRecord> parse_alarms_jsonl(const std::string& text) {
  std::vector<AlarmRecord> out;
  for_each_line(text, "alarm", [&](const nlohmann::json& j) {
    AlarmRecord a;
    a.alarm.t = j.at("t").get<double>();
    a.alarm.link = LinkId{j.at("link").get<std::uint32_t>()};
    const auto& res = j.at("resolution");
    if (!res.is_null()) {
      const std::string r = res.get<std::string>();
      if (r != "tp" && r != "fp") throw std::invalid_argument("resolution must be tp, fp or null");
      a.resolution = r == "tp" ? Resolution::TP : Resolution::FP;
    }
    a.alarm.id = j.value("id", std::uint64_t{0});
    a.alarm.probability = j.value("probability", 0.0);
    a.risk = j.value("risk", 0.0);
    a.action = j.value("action", std::string("ignored")) == "rerouted" ? AlarmAction::Rerouted : AlarmAction::Ignored;
    a.alarm.truth = j.value("truth", std::string("forecast")) == "injected" ? AlarmTruth::Injected
                                                                            : AlarmTruth::GenuineForecast;
    out.push_back(a);
  });
  return out;
}

std::vector<RouteChange> parse_routes_jsonl(const std::string& text) {
  std::vector<RouteChange> out;
  for_each_line(text, "route", [&](const nlohmann::json& j) {
    RouteChange r;
    r.t = j.at("t").get<double>();
    r.flow = j.at("flow").get<std::uint32_t>();
    r.from = nodes_of(j.at("from"));
    r.to = nodes_of(j.at("to"));
    r.cause = parse_route_cause(j.at("cause").get<std::string>());
    if (j.contains("alarm")) r.alarm = j.at("alarm").get<std::uint64_t>();
    r.convergence_ms = j.value("convergence_ms", 0.0);
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace smartroute
