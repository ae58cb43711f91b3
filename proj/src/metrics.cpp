#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "smartroute/metrics.hpp"

namespace smartroute {

bool serviceable(const FlowRoute& flow, const Topology& topology, const LinkQueue& queue) {
  if (!flow.serviceable || flow.current.empty()) return false;
  for (LinkId l : flow.current.links) {
    if (!queue.contains(topology.link_index(l))) return false;
  }
  return true;
}

double u_sdn(std::span<const std::uint64_t> no_counts, std::size_t flow_len) {
  if (no_counts.empty()) throw std::invalid_argument("u_sdn: no failure events");
  if (flow_len == 0) throw std::invalid_argument("u_sdn: no flows");
  std::uint64_t no = 0;
  for (std::uint64_t c : no_counts) {
    if (c > flow_len) throw std::invalid_argument("u_sdn: more unserviceable flows than flows");
    no += c;
  }
  return static_cast<double>(no) / (static_cast<double>(no_counts.size()) * static_cast<double>(flow_len));
}

double u_sr(double recall, double u_sdn_value) {
  if (!(recall >= 0.0 && recall <= 1.0)) throw std::invalid_argument("u_sr: recall must be in [0, 1]");
  if (!(u_sdn_value >= 0.0 && u_sdn_value <= 1.0)) throw std::invalid_argument("u_sr: U_SDN must be in [0, 1]");
  return (1.0 - recall) * u_sdn_value;
}

double availability(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("availability: u must be in [0, 1]");
  return 1.0 - u;
}

FlapTotals rf_totals(std::span<const RouteChange> trace, Mode mode, FlapCounting counting) {
  FlapTotals out;
  // (flow, alarm) pairs with an outstanding swap.
  std::map<std::pair<std::uint32_t, std::uint64_t>, bool> open_swaps;
  std::map<std::uint64_t, bool> fp_alarms;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const RouteChange& r = trace[i];
    ++out.total;
    switch (r.cause) {
      case RouteCause::Fail: ++out.fail; break;
      case RouteCause::Repair: ++out.repair; break;
      case RouteCause::Alarm:
      case RouteCause::FpRevert: {
        if (mode == Mode::Sdn) {
          throw std::invalid_argument("route trace record " + std::to_string(i) + ": cause '" + to_string(r.cause) +
                                      "' in an SDN trace");
        }
        if (!r.alarm) {
          throw std::invalid_argument("route trace record " + std::to_string(i) + ": " + to_string(r.cause) +
                                      " without alarm id");
        }
        const auto key = std::make_pair(r.flow, *r.alarm);
        if (r.cause == RouteCause::Alarm) {
          ++out.alarm;
          open_swaps[key] = true;
        } else {
          ++out.fp_revert;
          const auto it = open_swaps.find(key);
          if (it == open_swaps.end()) {
            throw std::invalid_argument("route trace record " + std::to_string(i) + ": fp_revert of flow " +
                                        std::to_string(r.flow) + " without a prior swap for alarm " +
                                        std::to_string(*r.alarm));
          }
          open_swaps.erase(it);
          fp_alarms[*r.alarm] = true;
          if (counting == FlapCounting::PerFlow) out.useless += 2;
        }
        break;
      }
    }
  }
  if (counting == FlapCounting::PerEvent) out.useless = 2 * fp_alarms.size();
  return out;
}

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols{"run_id",    "seed", "topology",      "mode", "sim_hours", "events",
                                             "flows",     "availability",  "unavailability", "flaps_total",
                                             "flaps_useless", "tp", "fp",  "fn",   "recall",    "precision"};
  return cols;
}

std::string summary_header() {
  std::string out;
  for (const auto& c : summary_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string summary_row(const RunReport& r) {
  std::ostringstream out;
  out << r.run_id << ',' << r.seed << ',' << r.topology << ',' << to_string(r.mode) << ',' << fixed6(r.sim_hours)
      << ',' << r.events << ',' << r.flows << ',' << fixed6(r.availability) << ',' << fixed6(r.unavailability) << ','
      << r.flaps_total << ',' << r.flaps_useless << ',' << r.tp << ',' << r.fp << ',' << r.fn << ','
      << fixed6(r.recall) << ',' << fixed6(r.precision);
  return out.str();
}

std::vector<RunReport> parse_summary_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::vector<RunReport> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != summary_header()) throw std::invalid_argument(where + ": not a run summary (header mismatch)");
      header_seen = true;
      continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != summary_columns().size()) {
      throw std::invalid_argument(where + ": expected " + std::to_string(summary_columns().size()) + " columns, got " +
                                  std::to_string(cells.size()));
    }
    try {
      RunReport r;
      r.run_id = cells[0];
      r.seed = std::stoull(cells[1]);
      r.topology = cells[2];
      r.mode = parse_mode(cells[3]);
      r.sim_hours = std::stod(cells[4]);
      r.events = std::stoull(cells[5]);
      r.flows = std::stoull(cells[6]);
      r.availability = std::stod(cells[7]);
      r.unavailability = std::stod(cells[8]);
      r.flaps_total = std::stoull(cells[9]);
      r.flaps_useless = std::stoull(cells[10]);
      r.tp = std::stoull(cells[11]);
      r.fp = std::stoull(cells[12]);
      r.fn = std::stoull(cells[13]);
      r.recall = std::stod(cells[14]);
      r.precision = std::stod(cells[15]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  if (!header_seen) throw std::invalid_argument(source + ": empty file");
  return rows;
}

}  // namespace smartroute
