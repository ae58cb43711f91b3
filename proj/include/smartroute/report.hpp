#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smartroute/metrics.hpp"

namespace smartroute {

struct GroupStats {
  std::string topology;
  Mode mode{Mode::Sdn};
  std::size_t runs{};
  double availability_mean{};
  double availability_stddev{};  // sample standard deviation, 0 for one run
  double flaps_mean{};
  double useless_mean{};
  double useless_pct{};  // 100 * sum(useless) / sum(total)
  double recall_mean{};
  double precision_mean{};
};

/// Groups by (topology, mode), ordered by topology then mode.
std::vector<GroupStats> aggregate(const std::vector<RunReport>& rows);

std::string aggregate_csv(const std::vector<GroupStats>& groups);

/// One point per run: x = flaps_total, y = availability.
std::string scatter_csv(const std::vector<RunReport>& rows);

/// Sorted paths matching a shell glob; empty when nothing matches.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

}  // namespace smartroute
