#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smartroute/failmodel.hpp"
#include "smartroute/rng.hpp"

namespace smartroute {

/// How an alarm's failure probability is obtained.
///  - QueueShare: the link's Probability_F, f_count over the queue's total.
///  - UniformScore: a fresh Uniform[score_lo, score_hi) score per forecast,
///    standing in for a predictor whose confidence is a tunable input.
enum class ProbabilitySource { QueueShare, UniformScore };

/// How long an alarm stays valid after emission.
///  - LeadTime: lead + prediction window (a genuine forecast lands inside).
///  - PredictionOnly: the prediction window alone.
enum class Validity { LeadTime, PredictionOnly };

struct PredictorConfig {
  bool enabled{true};
  double t_omega{0.25};
  double delta_t_l_s{120.0};
  double delta_t_p_s{30.0};
  double fp_rate{0.0};  // injected false alarms per simulated hour
  ProbabilitySource probability_source{ProbabilitySource::QueueShare};
  Validity validity{Validity::LeadTime};
  double score_lo{0.0};
  double score_hi{1.0};

  double lead_h() const { return delta_t_l_s / 3600.0; }
  double window_h() const;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

enum class AlarmTruth { GenuineForecast, Injected };
enum class Resolution { TP, FP };

std::string to_string(ProbabilitySource s);
std::string to_string(Validity v);
std::string to_string(Resolution r);
ProbabilitySource parse_probability_source(const std::string& s);
Validity parse_validity(const std::string& s);

/// m = (link, t). `truth` is bookkeeping for the trace; the controller only
/// sees link, t and probability.
struct AlarmMessage {
  std::uint64_t id{};
  LinkId link;
  std::size_t link_index{};
  double t{};
  double probability{};
  AlarmTruth truth{AlarmTruth::GenuineForecast};
};

class PredictionLedger {
 public:
  std::uint64_t tp{};
  std::uint64_t fp{};
  std::uint64_t fn{};

  /// Throws std::logic_error if the alarm was already resolved.
  void record(std::uint64_t alarm_id, Resolution r);
  void record_missed_failure() { ++fn; }
  bool resolved(std::uint64_t alarm_id) const { return resolutions_.contains(alarm_id); }
  const std::map<std::uint64_t, Resolution>& resolutions() const { return resolutions_; }

 private:
  std::map<std::uint64_t, Resolution> resolutions_;
};

/// TP iff the alarm's link went down within [t, t + window_h].
Resolution resolve(const AlarmMessage& alarm, std::span<const FailureEvent> failures, double window_h,
                   PredictionLedger& ledger);

struct RecallPrecision {
  double recall;
  double precision;
};
RecallPrecision recall_precision(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);
inline RecallPrecision recall_precision(const PredictionLedger& l) { return recall_precision(l.tp, l.fp, l.fn); }

/// Simulated failure predictor. It reads the queue (and therefore knows the
/// sampled Next_F of the head link) and emits forecasts that pass the
/// probability threshold with enough lead time.
class Predictor {
 public:
  Predictor(PredictorConfig config, std::uint64_t root_seed,
            double horizon_h = std::numeric_limits<double>::infinity());

  const PredictorConfig& config() const { return config_; }

  /// Examines the queue head once per up-cycle of each link. Returns a
  /// forecast timestamped next_f - lead, or nothing.
  std::optional<AlarmMessage> poll(const LinkQueue& queue, double now);

  /// Arrival times of injected false alarms in [0, horizon): a Poisson
  /// number per hour, placed uniformly inside that hour.
  std::vector<double> injection_slots(double sim_hours);

  /// A false alarm at `now` on a uniformly chosen enqueued link that cannot
  /// fail inside the validity window. Nothing if no link qualifies or the
  /// score misses the threshold.
  std::optional<AlarmMessage> inject(const LinkQueue& queue, double now);

  bool pending(std::size_t link_index) const { return pending_.contains(link_index); }

  /// The alarm on this link is settled (resolved or ignored).
  void release(std::size_t link_index) { pending_.erase(link_index); }

 private:
  double score(const LinkRecord& record);
  AlarmMessage make_alarm(const LinkRecord& record, std::size_t link_index, double t, double p, AlarmTruth truth);

  PredictorConfig config_;
  double horizon_h_;
  Rng score_rng_;
  Rng injection_rng_;
  std::uint64_t next_id_{0};
  std::map<std::size_t, std::uint64_t> evaluated_;  // link index -> f_count at last evaluation
  std::map<std::size_t, std::uint64_t> pending_;    // link index -> alarm id
};

}  // namespace smartroute
