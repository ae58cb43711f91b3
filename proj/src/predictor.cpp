#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smartroute/predictor.hpp"

namespace smartroute {

double PredictorConfig::window_h() const {
  const double p = delta_t_p_s / 3600.0;
  return validity == Validity::LeadTime ? lead_h() + p : p;
}

void PredictorConfig::validate() const {
  if (!(t_omega >= 0.0 && t_omega <= 1.0)) throw std::invalid_argument("predictor.t_omega must be in [0, 1]");
  if (!(delta_t_l_s > 0.0) || !std::isfinite(delta_t_l_s)) throw std::invalid_argument("predictor.delta_t_l_s must be positive");
  if (!(delta_t_p_s > 0.0) || !std::isfinite(delta_t_p_s)) throw std::invalid_argument("predictor.delta_t_p_s must be positive");
  if (!(fp_rate >= 0.0) || !std::isfinite(fp_rate)) throw std::invalid_argument("predictor.fp_rate must be non-negative");
  if (!(score_lo >= 0.0 && score_lo < score_hi && score_hi <= 1.0)) {
    throw std::invalid_argument("predictor.score_range must satisfy 0 <= lo < hi <= 1");
  }
}

std::string to_string(ProbabilitySource s) { return s == ProbabilitySource::QueueShare ? "queue_share" : "uniform_score"; }
std::string to_string(Validity v) { return v == Validity::LeadTime ? "lead_time" : "prediction_only"; }
std::string to_string(Resolution r) { return r == Resolution::TP ? "tp" : "fp"; }

ProbabilitySource parse_probability_source(const std::string& s) {
  if (s == "queue_share") return ProbabilitySource::QueueShare;
  if (s == "uniform_score") return ProbabilitySource::UniformScore;
  throw std::invalid_argument("unknown probability_source '" + s + "' (expected queue_share or uniform_score)");
}

Validity parse_validity(const std::string& s) {
  if (s == "lead_time") return Validity::LeadTime;
  if (s == "prediction_only") return Validity::PredictionOnly;
  throw std::invalid_argument("unknown validity '" + s + "' (expected lead_time or prediction_only)");
}

void PredictionLedger::record(std::uint64_t alarm_id, Resolution r) {
  if (!resolutions_.emplace(alarm_id, r).second) {
    throw std::logic_error("alarm " + std::to_string(alarm_id) + " resolved twice");
  }
  (r == Resolution::TP ? tp : fp) += 1;
}

Resolution resolve(const AlarmMessage& alarm, std::span<const FailureEvent> failures, double window_h,
                   PredictionLedger& ledger) {
  Resolution r = Resolution::FP;
  for (const FailureEvent& f : failures) {
    if (f.link == alarm.link && f.down_time >= alarm.t && f.down_time <= alarm.t + window_h) {
      r = Resolution::TP;
      break;
    }
  }
  ledger.record(alarm.id, r);
  return r;
}

RecallPrecision recall_precision(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  const auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  return {ratio(tp, tp + fn), ratio(tp, tp + fp)};
}

Predictor::Predictor(PredictorConfig config, std::uint64_t root_seed, double horizon_h)
    : config_(config),
      horizon_h_(horizon_h),
      score_rng_(make_stream(root_seed, Stream::PredictorScore)),
      injection_rng_(make_stream(root_seed, Stream::Injection)) {
  config_.validate();
}

double Predictor::score(const LinkRecord& record) {
  if (config_.probability_source == ProbabilitySource::QueueShare) return record.probability_f;
  return std::uniform_real_distribution<double>(config_.score_lo, config_.score_hi)(score_rng_);
}

AlarmMessage Predictor::make_alarm(const LinkRecord& record, std::size_t link_index, double t, double p,
                                   AlarmTruth truth) {
  AlarmMessage m{next_id_++, record.id, link_index, t, p, truth};
  pending_[link_index] = m.id;
  return m;
}

std::optional<AlarmMessage> Predictor::poll(const LinkQueue& queue, double now) {
  if (!config_.enabled) return std::nullopt;
  const auto head = queue.head();
  if (!head) return std::nullopt;
  const LinkRecord& r = queue.record(*head);

  // One look per up-cycle: f_count identifies the cycle.
  const auto seen = evaluated_.find(*head);
  if (seen != evaluated_.end() && seen->second == r.f_count) return std::nullopt;
  evaluated_[*head] = r.f_count;

  if (pending(*head)) return std::nullopt;
  const double p = score(r);
  if (p < config_.t_omega) return std::nullopt;
  if (r.next_f - now < config_.lead_h()) return std::nullopt;
  const double t = r.next_f - config_.lead_h();
  if (t + config_.window_h() > horizon_h_) return std::nullopt;
  return make_alarm(r, *head, t, p, AlarmTruth::GenuineForecast);
}

std::vector<double> Predictor::injection_slots(double sim_hours) {
  std::vector<double> slots;
  if (!config_.enabled || config_.fp_rate <= 0.0) return slots;
  std::poisson_distribution<int> per_hour(config_.fp_rate);
  std::uniform_real_distribution<double> offset(0.0, 1.0);
  const auto hours = static_cast<std::uint64_t>(std::ceil(sim_hours));
  for (std::uint64_t h = 0; h < hours; ++h) {
    const int k = per_hour(injection_rng_);
    for (int i = 0; i < k; ++i) {
      const double t = static_cast<double>(h) + offset(injection_rng_);
      if (t < sim_hours) slots.push_back(t);
    }
  }
  std::sort(slots.begin(), slots.end());
  return slots;
}

std::optional<AlarmMessage> Predictor::inject(const LinkQueue& queue, double now) {
  if (!config_.enabled) return std::nullopt;
  const double window = config_.window_h();
  if (now + window > horizon_h_) return std::nullopt;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < queue.link_count(); ++i) {
    if (queue.contains(i) && !pending(i) && queue.record(i).next_f - now > window) eligible.push_back(i);
  }
  if (eligible.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  const std::size_t link = eligible[pick(injection_rng_)];
  const LinkRecord& r = queue.record(link);
  const double p = score(r);
  if (p < config_.t_omega) return std::nullopt;
  return make_alarm(r, link, now, p, AlarmTruth::Injected);
}

}  // namespace smartroute
