#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smartroute/controller.hpp"
#include "smartroute/graph.hpp"
#include "smartroute/predictor.hpp"

namespace smartroute {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  std::string topology_ref;  // as written in the file
  std::shared_ptr<const Topology> topology;
  bool all_pairs{true};
  std::vector<Demand> demands;  // used when all_pairs is false
  Mode mode{Mode::Sr};
  std::uint64_t seed{1};
  double sim_hours{48.0};
  double time_compression{100.0};
  double gamma_lo{0.01};
  double gamma_hi{0.05};
  PredictorConfig predictor;
  RiskConfig risk;
  TimingModel timing;

  /// Throws ScenarioError on out-of-range fields or a missing topology.
  void validate() const;

  std::vector<Demand> resolved_demands() const;
};

/// Parses scenario JSON. A relative "topology" path is resolved against
/// `base_dir`. Throws ScenarioError.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

/// Echo of the effective scenario (defaults filled in).
std::string scenario_json(const Scenario& s);

}  // namespace smartroute
