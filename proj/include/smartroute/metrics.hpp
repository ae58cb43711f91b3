#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smartroute/controller.hpp"
#include "smartroute/failmodel.hpp"

namespace smartroute {

/// (flow ∩ Q) = flow: every link of the current path is enqueued.
bool serviceable(const FlowRoute& flow, const Topology& topology, const LinkQueue& queue);

/// Sum of per-event "No" counts over (events × flows). Throws
/// std::invalid_argument when either count is zero.
double u_sdn(std::span<const std::uint64_t> no_counts, std::size_t flow_len);

/// (1 - recall) × U_SDN.
double u_sr(double recall, double u_sdn_value);

/// 1 - U.
double availability(double u);

/// PerFlow: an FP costs two flaps per swapped flow. PerEvent: two flaps per
/// FP alarm, however many flows it moved.
enum class FlapCounting { PerFlow, PerEvent };

struct FlapTotals {
  std::uint64_t total{};
  std::uint64_t useless{};
  std::uint64_t fail{};
  std::uint64_t repair{};
  std::uint64_t alarm{};
  std::uint64_t fp_revert{};
};

/// Flap totals from a route-change trace. Useless flaps are
/// alarm swaps later undone by an fp_revert of the same flow and alarm,
/// counted with their revert. Throws std::invalid_argument for an SDN trace
/// carrying alarm causes, or an fp_revert with no matching swap.
FlapTotals rf_totals(std::span<const RouteChange> trace, Mode mode, FlapCounting counting = FlapCounting::PerFlow);

struct RunReport {
  std::string run_id;
  std::uint64_t seed{};
  std::string topology;
  Mode mode{Mode::Sdn};
  double sim_hours{};
  std::uint64_t events{};
  std::uint64_t flows{};
  double availability{1.0};
  double unavailability{0.0};
  std::uint64_t flaps_total{};
  std::uint64_t flaps_useless{};
  std::uint64_t tp{};
  std::uint64_t fp{};
  std::uint64_t fn{};
  double recall{};
  double precision{};
};

/// Summary CSV header, exact column order.
const std::vector<std::string>& summary_columns();
std::string summary_header();
std::string summary_row(const RunReport& r);
/// Parses rows produced by summary_row; throws std::invalid_argument with
/// the offending line on schema mismatch.
std::vector<RunReport> parse_summary_csv(const std::string& text, const std::string& source = "<csv>");

}  // namespace smartroute
