#include "ofdma/traffic.hpp"

#include <cmath>

#include "ofdma/model.hpp"

namespace ofdma {

TrafficModel TrafficModel::Default(int users_per_group) {
  TrafficModel m;
  for (int k = 1; k <= users_per_group; ++k)
    m.durations.push_back({0.2 * k, 4.0});
  return m;
}

void TrafficModel::Validate(int users_per_group) const {
  const auto k_users = static_cast<std::size_t>(users_per_group);
  if (mode == TrafficMode::kDuration) {
    if (durations.size() != k_users)
      ThrowConfig("duration_mean_ms: expected one entry per user (K=" +
                  std::to_string(users_per_group) + ")");
    for (std::size_t k = 0; k < durations.size(); ++k) {
      if (!(durations[k].mean_ms > 0.0) || !std::isfinite(durations[k].mean_ms))
        ThrowConfig("duration_mean_ms: every mean must be finite and > 0");
      if (!(durations[k].shape > 0.0))
        ThrowConfig("duration_shape: every shape must be > 0");
      if (k > 0 && !(durations[k].mean_ms > durations[k - 1].mean_ms))
        ThrowConfig(
            "duration_mean_ms: means must be strictly increasing in user index");
    }
    if (!(reference_rate_bps > 0.0))
      ThrowConfig("reference_rate_bps: must be > 0");
    return;
  }
  if (rate_set_bps.empty()) ThrowConfig("rate_set_bps: must not be empty");
  for (double r : rate_set_bps)
    if (!(r > 0.0)) ThrowConfig("rate_set_bps: every rate must be > 0");
  if (arrival_mean_bits.size() != k_users)
    ThrowConfig("arrival_mean_bits: expected one entry per user (K=" +
                std::to_string(users_per_group) + ")");
  for (double a : arrival_mean_bits)
    if (!(a > 0.0)) ThrowConfig("arrival_mean_bits: every mean must be > 0");
}

GroupTraffic::GroupTraffic(const TrafficModel& model, std::uint64_t seed,
                           int group_index)
    : model_(&model) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(group_index)};
  rng_.seed(seq);
  if (model.mode == TrafficMode::kDuration) {
    for (const DurationLaw& law : model.durations) {
      // Degenerate laws never touch their distribution.
      const double shape = law.degenerate() ? 1.0 : law.shape;
      gammas_.emplace_back(shape, law.mean_ms / shape);
    }
  } else {
    for (double mean : model.arrival_mean_bits)
      arrivals_.emplace_back(1.0 / mean);
    rate_pick_ = std::uniform_int_distribution<std::size_t>(
        0, model.rate_set_bps.size() - 1);
  }
}

Duration GroupTraffic::DrawDuration(std::size_t user) {
  const DurationLaw& law = model_->durations[user];
  if (law.degenerate()) return Duration::FromMs(law.mean_ms);
  double t = gammas_[user](rng_);
  // Gamma draws are positive in exact arithmetic; guard the denormal case.
  if (!(t > 0.0)) t = std::numeric_limits<double>::min();
  return Duration::FromMs(t);
}

std::vector<Demand> GroupTraffic::SampleSlotDemands(std::span<UserState> users) {
  std::vector<Demand> out;
  out.reserve(users.size());
  for (std::size_t k = 0; k < users.size(); ++k) {
    UserState& u = users[k];
    if (!model_->carry_over) u.queue_bits = 0.0;
    if (model_->mode == TrafficMode::kDuration) {
      u.rate_bps = model_->reference_rate_bps;
      u.queue_bits += DrawDuration(k).seconds() * u.rate_bps;
    } else {
      u.rate_bps = model_->rate_set_bps[rate_pick_(rng_)];
      u.queue_bits += arrivals_[k](rng_);
    }
    out.push_back({RequiredDuration(u.queue_bits, u.rate_bps), u.queue_bits,
                   u.rate_bps});
  }
  return out;
}

}  // namespace ofdma
