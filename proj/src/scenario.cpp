#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "smartroute/scenario.hpp"

namespace smartroute {

namespace {

using nlohmann::json;

// Unknown keys are rejected so that a typo never silently falls back to a
// default.
void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ScenarioError(where + ": unknown field '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ScenarioError("expected a number");
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!it->is_number_unsigned()) throw ScenarioError("expected a non-negative integer");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ScenarioError("expected true or false");
    }
    out = it->get<T>();
  } catch (const std::exception& e) {
    throw ScenarioError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

void Scenario::validate() const {
  if (!topology) throw ScenarioError("scenario '" + name + "': no topology");
  if (!(sim_hours > 0.0) || !std::isfinite(sim_hours)) throw ScenarioError("sim_hours must be positive");
  if (!(time_compression >= 1.0) || !std::isfinite(time_compression)) {
    throw ScenarioError("time_compression must be >= 1");
  }
  if (!(gamma_lo > 0.0) || !(gamma_hi >= gamma_lo) || !std::isfinite(gamma_hi)) {
    throw ScenarioError("gamma_bounds must satisfy 0 < lo <= hi");
  }
  try {
    predictor.validate();
    risk.validate();
    timing.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  if (!all_pairs) {
    if (demands.empty()) throw ScenarioError("explicit demand list is empty");
    for (std::size_t i = 0; i < demands.size(); ++i) {
      const Demand& d = demands[i];
      if (!topology->has_node(d.src) || !topology->has_node(d.dst)) {
        throw ScenarioError("demands[" + std::to_string(i) + "]: unknown node");
      }
      if (d.src == d.dst) throw ScenarioError("demands[" + std::to_string(i) + "]: src == dst");
    }
  }
}

std::vector<Demand> Scenario::resolved_demands() const { return all_pairs ? smartroute::all_pairs(*topology) : demands; }

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("malformed scenario JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  check_keys(doc,
             {"name", "topology", "demands", "mode", "seed", "sim_hours", "time_compression", "gamma_bounds",
              "predictor", "risk", "timing"},
             "scenario");

  Scenario s;
  read(doc, "name", s.name, "scenario");
  if (!doc.contains("topology") || !doc["topology"].is_string()) {
    throw ScenarioError("scenario: 'topology' must be a path string");
  }
  s.topology_ref = doc["topology"].get<std::string>();
  std::filesystem::path topo_path = s.topology_ref;
  if (topo_path.is_relative()) topo_path = base_dir / topo_path;
  try {
    s.topology = std::make_shared<const Topology>(load_topology(topo_path));
  } catch (const TopologyError& e) {
    throw ScenarioError(std::string("scenario topology: ") + e.what());
  }
  if (s.name.empty()) s.name = s.topology->name();

  if (doc.contains("demands")) {
    const json& d = doc["demands"];
    if (d.is_string()) {
      if (d.get<std::string>() != "all-pairs") throw ScenarioError("demands: expected \"all-pairs\" or a list");
    } else if (d.is_array()) {
      s.all_pairs = false;
      for (std::size_t i = 0; i < d.size(); ++i) {
        const json& e = d[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
          throw ScenarioError("demands[" + std::to_string(i) + "]: expected [src, dst]");
        }
        s.demands.push_back({NodeId{e[0].get<std::uint32_t>()}, NodeId{e[1].get<std::uint32_t>()}});
      }
    } else {
      throw ScenarioError("demands: expected \"all-pairs\" or a list");
    }
  }

  if (doc.contains("mode")) {
    try {
      s.mode = parse_mode(doc["mode"].get<std::string>());
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("scenario.mode: ") + e.what());
    }
  }
  read(doc, "seed", s.seed, "scenario");
  read(doc, "sim_hours", s.sim_hours, "scenario");
  read(doc, "time_compression", s.time_compression, "scenario");
  if (doc.contains("gamma_bounds")) {
    const json& g = doc["gamma_bounds"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number() || !g[1].is_number()) {
      throw ScenarioError("gamma_bounds: expected [lo, hi]");
    }
    s.gamma_lo = g[0].get<double>();
    s.gamma_hi = g[1].get<double>();
  }

  if (doc.contains("predictor")) {
    const json& p = doc["predictor"];
    if (!p.is_object()) throw ScenarioError("predictor: expected an object");
    check_keys(p, {"enabled", "t_omega", "delta_t_l_s", "delta_t_p_s", "fp_rate", "probability_source", "validity",
                   "score_range"},
               "predictor");
    read(p, "enabled", s.predictor.enabled, "predictor");
    read(p, "t_omega", s.predictor.t_omega, "predictor");
    read(p, "delta_t_l_s", s.predictor.delta_t_l_s, "predictor");
    read(p, "delta_t_p_s", s.predictor.delta_t_p_s, "predictor");
    read(p, "fp_rate", s.predictor.fp_rate, "predictor");
    try {
      if (p.contains("probability_source")) {
        s.predictor.probability_source = parse_probability_source(p["probability_source"].get<std::string>());
      }
      if (p.contains("validity")) s.predictor.validity = parse_validity(p["validity"].get<std::string>());
      if (p.contains("score_range")) {
        const json& r = p["score_range"];
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
          throw ScenarioError("score_range: expected [lo, hi]");
        }
        s.predictor.score_lo = r[0].get<double>();
        s.predictor.score_hi = r[1].get<double>();
      }
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("predictor: ") + e.what());
    }
  }
  if (doc.contains("risk")) {
    const json& r = doc["risk"];
    if (!r.is_object()) throw ScenarioError("risk: expected an object");
    check_keys(r, {"t_small_omega"}, "risk");
    read(r, "t_small_omega", s.risk.t_small_omega, "risk");
  }
  if (doc.contains("timing")) {
    const json& t = doc["timing"];
    if (!t.is_object()) throw ScenarioError("timing: expected an object");
    check_keys(t, {"t_d_ms", "t_sp_ms", "t_update_ms"}, "timing");
    read(t, "t_d_ms", s.timing.t_d_ms, "timing");
    read(t, "t_sp_ms", s.timing.t_sp_ms, "timing");
    read(t, "t_update_ms", s.timing.t_update_ms, "timing");
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str(), path.parent_path());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

std::string scenario_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["topology"] = s.topology_ref;
  if (s.all_pairs) {
    j["demands"] = "all-pairs";
  } else {
    auto d = nlohmann::ordered_json::array();
    for (const Demand& x : s.demands) d.push_back({x.src.value, x.dst.value});
    j["demands"] = d;
  }
  j["mode"] = to_string(s.mode);
  j["seed"] = s.seed;
  j["sim_hours"] = s.sim_hours;
  j["time_compression"] = s.time_compression;
  j["gamma_bounds"] = {s.gamma_lo, s.gamma_hi};
  j["predictor"] = {{"enabled", s.predictor.enabled},
                    {"t_omega", s.predictor.t_omega},
                    {"delta_t_l_s", s.predictor.delta_t_l_s},
                    {"delta_t_p_s", s.predictor.delta_t_p_s},
                    {"fp_rate", s.predictor.fp_rate},
                    {"probability_source", to_string(s.predictor.probability_source)},
                    {"validity", to_string(s.predictor.validity)},
                    {"score_range", {s.predictor.score_lo, s.predictor.score_hi}}};
  j["risk"] = {{"t_small_omega", s.risk.t_small_omega}};
  j["timing"] = {{"t_d_ms", s.timing.t_d_ms}, {"t_sp_ms", s.timing.t_sp_ms}, {"t_update_ms", s.timing.t_update_ms}};
  return j.dump(2) + "\n";
}

}  // namespace smartroute
