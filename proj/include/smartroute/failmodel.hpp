#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "smartroute/graph.hpp"
#include "smartroute/rng.hpp"

namespace smartroute {

constexpr double kHoursPerYear = 365.0 * 24.0;

/// MTBF in hours for a cable of `length_km`, where `cc_km` is the length
/// that fails once a year on average.
double mtbf_hours(double cc_km, double length_km);

/// MTTR in hours: `gamma` (hours per km) times cable length.
double mttr_hours(double gamma, double length_km);

/// Lognormal repair-time parameters whose mean equals `mttr` and whose
/// standard deviation is 0.6 * mttr.
struct LognormalParams {
  double mu;
  double sigma;
};
LognormalParams repair_lognormal(double mttr);

double sample_time_to_failure(double mtbf, Rng& rng);
double sample_time_to_recover(double mttr, Rng& rng);

/// f_count / total, or 0 when nothing has failed yet.
double failure_share(std::uint64_t f_count, std::uint64_t total);

enum class LinkStatus { Operational, Faulty };

struct LinkRecord {
  LinkId id;
  double mtbf_h{};
  double mttr_h{};
  double gamma{};  // hours per km
  double length_km{};
  std::uint64_t f_count{};
  double next_f{};          // absolute hours; meaningful while Operational
  double probability_f{};   // share of failures among enqueued links
  LinkStatus status{LinkStatus::Operational};
  double next_up{};         // absolute hours; meaningful while Faulty
};

/// Reliability attributes for every link of a topology. CC is the shortest
/// cable; gamma is drawn uniformly from [gamma_lo, gamma_hi] per link from
/// the scenario's gamma stream. next_f is left at 0.
std::vector<LinkRecord> make_link_records(const Topology& topology, double gamma_lo, double gamma_hi, Rng& gamma_rng);

/// The pool of operational links ordered by next_f (ties by link index).
/// Records stay addressable by link index whether enqueued or not.
class LinkQueue {
 public:
  explicit LinkQueue(std::vector<LinkRecord> records);

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::size_t link_count() const { return records_.size(); }

  const LinkRecord& record(std::size_t link_index) const { return records_.at(link_index); }
  std::span<const LinkRecord> records() const { return records_; }
  bool contains(std::size_t link_index) const { return records_.at(link_index).status == LinkStatus::Operational; }

  /// Index of the operational link with the earliest next_f.
  std::optional<std::size_t> head() const;

  /// Enqueued links in next_f order.
  std::vector<std::size_t> ordered() const;

  /// Sum of f_count over enqueued links.
  std::uint64_t enqueued_failures() const { return enqueued_failures_; }

  /// Dequeue a link: Faulty, f_count + 1, repair due at `next_up`.
  void fail(std::size_t link_index, double next_up);

  /// Re-enqueue a repaired link with a fresh failure time.
  void repair(std::size_t link_index, double next_f);

  /// Overwrite next_f of an enqueued link (used at setup).
  void set_next_f(std::size_t link_index, double next_f);

 private:
  void refresh_probabilities();

  std::vector<LinkRecord> records_;
  std::set<std::pair<double, std::size_t>> order_;
  std::uint64_t enqueued_failures_{};
};

struct Transition {
  enum class Kind { Down, Up };
  double t;
  Kind kind;
  std::size_t link;  // link index

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct FailureEvent {
  LinkId link;
  double down_time;
  double up_time;
};

/// Drives the queue through the down/up cycle of every link. The samplers
/// return interval lengths in hours for a given record.
class LinkLifeCycle {
 public:
  using Sampler = std::function<double(const LinkRecord&)>;

  LinkLifeCycle(LinkQueue& queue, Sampler time_to_failure, Sampler time_to_recover);

  /// Draw next_f for every enqueued link, relative to `now`.
  void schedule_all(double now);

  /// The next transition without applying it. At equal times a repair
  /// comes before a failure.
  std::optional<Transition> peek() const;

  Transition apply_next();

  /// Apply every transition due at or before `now`.
  std::vector<Transition> advance(double now);

  const LinkQueue& queue() const { return queue_; }

 private:
  LinkQueue& queue_;
  Sampler ttf_;
  Sampler ttr_;
  std::set<std::pair<double, std::size_t>> repairs_;
};

}  // namespace smartroute
