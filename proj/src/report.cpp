#include <glob.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "smartroute/report.hpp"

namespace smartroute {

namespace {

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<GroupStats> aggregate(const std::vector<RunReport>& rows) {
  std::map<std::pair<std::string, int>, std::vector<const RunReport*>> groups;
  for (const RunReport& r : rows) groups[{r.topology, static_cast<int>(r.mode)}].push_back(&r);

  std::vector<GroupStats> out;
  for (const auto& [key, members] : groups) {
    GroupStats g;
    g.topology = key.first;
    g.mode = static_cast<Mode>(key.second);
    g.runs = members.size();
    const double n = static_cast<double>(members.size());
    double total = 0.0;
    double useless = 0.0;
    for (const RunReport* r : members) {
      g.availability_mean += r->availability / n;
      g.flaps_mean += static_cast<double>(r->flaps_total) / n;
      g.useless_mean += static_cast<double>(r->flaps_useless) / n;
      g.recall_mean += r->recall / n;
      g.precision_mean += r->precision / n;
      total += static_cast<double>(r->flaps_total);
      useless += static_cast<double>(r->flaps_useless);
    }
    if (members.size() > 1) {
      double ss = 0.0;
      for (const RunReport* r : members) ss += (r->availability - g.availability_mean) * (r->availability - g.availability_mean);
      g.availability_stddev = std::sqrt(ss / (n - 1.0));
    }
    g.useless_pct = total > 0.0 ? 100.0 * useless / total : 0.0;
    out.push_back(g);
  }
  return out;
}

std::string aggregate_csv(const std::vector<GroupStats>& groups) {
  std::ostringstream out;
  out << "topology,mode,runs,availability_mean,availability_stddev,flaps_mean,flaps_useless_mean,useless_pct,"
         "recall_mean,precision_mean\n";
  for (const GroupStats& g : groups) {
    out << g.topology << ',' << to_string(g.mode) << ',' << g.runs << ',' << f6(g.availability_mean) << ','
        << f6(g.availability_stddev) << ',' << f6(g.flaps_mean) << ',' << f6(g.useless_mean) << ','
        << f6(g.useless_pct) << ',' << f6(g.recall_mean) << ',' << f6(g.precision_mean) << '\n';
  }
  return out.str();
}

std::string scatter_csv(const std::vector<RunReport>& rows) {
  std::ostringstream out;
  out << "run_id,topology,mode,flaps_total,availability\n";
  for (const RunReport& r : rows) {
    out << r.run_id << ',' << r.topology << ',' << to_string(r.mode) << ',' << r.flaps_total << ','
        << f6(r.availability) << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::filesystem::path> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw std::runtime_error("glob failed for '" + pattern + "'");
  return out;  // glob(3) sorts by default
}

}  // namespace smartroute
