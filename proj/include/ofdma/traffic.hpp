#pragma once

// Seeded demand generators.
//
// Duration mode draws each user's fresh transmission time T_k ~ Gamma(shape,
// mean/shape) at every scheduled slot and converts it to bits at a fixed
// reference rate. Rate-set mode draws i.i.d. exponential arrivals and a rate
// uniformly from a discrete set. By default each slot's demand stands alone
// (T_k(t) itself is the Gamma draw); with carry_over set, the fresh demand is
// added on top of whatever backlog the user kept from its previous slot.
//
// Each group owns an independent stream seeded from (run seed, group index),
// so a group's trajectory does not depend on how many other groups exist.

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ofdma/types.hpp"

namespace ofdma {

struct DurationLaw {
  double mean_ms = 1.0;
  // Gamma shape; +inf makes every draw equal to the mean.
  double shape = 4.0;

  double scale_ms() const { return mean_ms / shape; }
  bool degenerate() const { return shape == std::numeric_limits<double>::infinity(); }
};

enum class TrafficMode { kDuration, kRateSet };

struct TrafficModel {
  TrafficMode mode = TrafficMode::kDuration;
  std::vector<DurationLaw> durations;  // one per user in the group
  double reference_rate_bps = 1e8;
  bool carry_over = false;

  std::vector<double> rate_set_bps;       // rate-set mode
  std::vector<double> arrival_mean_bits;  // rate-set mode, one per user

  // Default duration laws: means 0.2, 0.4, ... ms (0.2*k), shape 4.
  static TrafficModel Default(int users_per_group);

  void Validate(int users_per_group) const;
};

inline constexpr const char* kRngName = "std::mt19937_64 seeded by std::seed_seq{seed_lo, seed_hi, group}";

class GroupTraffic {
 public:
  GroupTraffic(const TrafficModel& model, std::uint64_t seed, int group_index);

  // Admits this slot's fresh demand into each user's queue (and sets the
  // user's current rate), then reports T_k, Q_k and R_k per user.
  std::vector<Demand> SampleSlotDemands(std::span<UserState> users);

  // Draws fresh per-user durations only; exposed for distribution tests.
  Duration DrawDuration(std::size_t user);

 private:
  const TrafficModel* model_;
  std::mt19937_64 rng_;
  std::vector<std::gamma_distribution<double>> gammas_;
  std::vector<std::exponential_distribution<double>> arrivals_;
  std::uniform_int_distribution<std::size_t> rate_pick_;
};

}  // namespace ofdma
