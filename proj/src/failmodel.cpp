#include <cmath>
#include <stdexcept>
#include <string>

#include "smartroute/failmodel.hpp"

namespace smartroute {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace

double mtbf_hours(double cc_km, double length_km) {
  require_positive(cc_km, "mtbf: cc_km");
  require_positive(length_km, "mtbf: length_km");
  return cc_km * kHoursPerYear / length_km;
}

double mttr_hours(double gamma, double length_km) {
  require_positive(gamma, "mttr: gamma");
  require_positive(length_km, "mttr: length_km");
  return gamma * length_km;
}

LognormalParams repair_lognormal(double mttr) {
  require_positive(mttr, "repair_lognormal: mttr");
  // Coefficient of variation 0.6: (0.6 * mttr)^2 / mttr^2 = 0.36.
  const double v = std::log(1.0 + 0.36);
  return {std::log(mttr) - 0.5 * v, std::sqrt(v)};
}

double sample_time_to_failure(double mtbf, Rng& rng) {
  require_positive(mtbf, "sample_time_to_failure: mtbf");
  return std::exponential_distribution<double>(1.0 / mtbf)(rng);
}

double sample_time_to_recover(double mttr, Rng& rng) {
  const auto [mu, sigma] = repair_lognormal(mttr);
  return std::lognormal_distribution<double>(mu, sigma)(rng);
}

double failure_share(std::uint64_t f_count, std::uint64_t total) {
  if (total == 0) return 0.0;
  return static_cast<double>(f_count) / static_cast<double>(total);
}

std::vector<LinkRecord> make_link_records(const Topology& topology, double gamma_lo, double gamma_hi,
                                          Rng& gamma_rng) {
  if (!(gamma_lo > 0.0) || !(gamma_hi >= gamma_lo)) {
    throw std::invalid_argument("gamma bounds must satisfy 0 < lo <= hi");
  }
  const double cc = topology.min_length_km();
  std::uniform_real_distribution<double> gamma_dist(gamma_lo, gamma_hi);
  std::vector<LinkRecord> records;
  records.reserve(topology.link_count());
  for (const Link& l : topology.links()) {
    LinkRecord r;
    r.id = l.id;
    r.length_km = l.length_km;
    r.mtbf_h = mtbf_hours(cc, l.length_km);
    r.gamma = gamma_lo == gamma_hi ? gamma_lo : gamma_dist(gamma_rng);
    r.mttr_h = mttr_hours(r.gamma, l.length_km);
    records.push_back(r);
  }
  return records;
}

LinkQueue::LinkQueue(std::vector<LinkRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].status == LinkStatus::Operational) {
      order_.emplace(records_[i].next_f, i);
      enqueued_failures_ += records_[i].f_count;
    }
  }
  refresh_probabilities();
}

std::optional<std::size_t> LinkQueue::head() const {
  if (order_.empty()) return std::nullopt;
  return order_.begin()->second;
}

std::vector<std::size_t> LinkQueue::ordered() const {
  std::vector<std::size_t> out;
  out.reserve(order_.size());
  for (const auto& [t, i] : order_) out.push_back(i);
  return out;
}

void LinkQueue::fail(std::size_t link_index, double next_up) {
  LinkRecord& r = records_.at(link_index);
  if (r.status != LinkStatus::Operational) {
    throw std::logic_error("link " + std::to_string(r.id.value) + " failed while already faulty");
  }
  order_.erase({r.next_f, link_index});
  enqueued_failures_ -= r.f_count;
  r.status = LinkStatus::Faulty;
  r.f_count += 1;
  r.next_up = next_up;
  refresh_probabilities();
}

void LinkQueue::repair(std::size_t link_index, double next_f) {
  LinkRecord& r = records_.at(link_index);
  if (r.status != LinkStatus::Faulty) {
    throw std::logic_error("link " + std::to_string(r.id.value) + " repaired while operational");
  }
  r.status = LinkStatus::Operational;
  r.next_f = next_f;
  order_.emplace(next_f, link_index);
  enqueued_failures_ += r.f_count;
  refresh_probabilities();
}

void LinkQueue::set_next_f(std::size_t link_index, double next_f) {
  LinkRecord& r = records_.at(link_index);
  if (r.status != LinkStatus::Operational) throw std::logic_error("set_next_f on a faulty link");
  order_.erase({r.next_f, link_index});
  r.next_f = next_f;
  order_.emplace(next_f, link_index);
}

void LinkQueue::refresh_probabilities() {
  for (LinkRecord& r : records_) {
    r.probability_f = r.status == LinkStatus::Operational ? failure_share(r.f_count, enqueued_failures_) : 0.0;
  }
}

LinkLifeCycle::LinkLifeCycle(LinkQueue& queue, Sampler time_to_failure, Sampler time_to_recover)
    : queue_(queue), ttf_(std::move(time_to_failure)), ttr_(std::move(time_to_recover)) {}

void LinkLifeCycle::schedule_all(double now) {
  for (std::size_t i = 0; i < queue_.link_count(); ++i) {
    if (queue_.contains(i)) queue_.set_next_f(i, now + ttf_(queue_.record(i)));
  }
}

std::optional<Transition> LinkLifeCycle::peek() const {
  const auto head = queue_.head();
  const bool has_up = !repairs_.empty();
  if (!head && !has_up) return std::nullopt;
  if (has_up) {
    const auto& [t_up, link_up] = *repairs_.begin();
    if (!head || t_up <= queue_.record(*head).next_f) return Transition{t_up, Transition::Kind::Up, link_up};
  }
  return Transition{queue_.record(*head).next_f, Transition::Kind::Down, *head};
}

Transition LinkLifeCycle::apply_next() {
  const auto next = peek();
  if (!next) throw std::logic_error("apply_next on an empty life cycle");
  if (next->kind == Transition::Kind::Up) {
    repairs_.erase(repairs_.begin());
    // The repaired record is not in the queue yet; sample from its state.
    const double ttf = ttf_(queue_.record(next->link));
    queue_.repair(next->link, next->t + ttf);
  } else {
    const double ttr = ttr_(queue_.record(next->link));
    const double up = next->t + ttr;
    queue_.fail(next->link, up);
    repairs_.emplace(up, next->link);
  }
  return *next;
}

std::vector<Transition> LinkLifeCycle::advance(double now) {
  std::vector<Transition> applied;
  for (auto next = peek(); next && next->t <= now; next = peek()) applied.push_back(apply_next());
  return applied;
}

}  // namespace smartroute
