#include "ofdma/model.hpp"

#include <algorithm>

namespace ofdma {

Duration RequiredDuration(double queue_bits, double rate_bps) {
  if (!(rate_bps > 0.0)) ThrowInvalid("rate_bps must be > 0");
  if (!(queue_bits >= 0.0)) ThrowInvalid("queue_bits must be >= 0");
  if (queue_bits == 0.0) return Duration::Zero();
  return Duration::FromMs(queue_bits / rate_bps * 1000.0);
}

QueueUpdate ApplyQueueUpdate(const UserState& user, Duration ts, bool scheduled,
                             double arrivals_bits) {
  const double capacity = scheduled ? user.rate_bps * ts.seconds() : 0.0;
  QueueUpdate out{user, std::min(user.queue_bits, capacity)};
  out.user.queue_bits =
      std::max(user.queue_bits - capacity, 0.0) + arrivals_bits;
  return out;
}

double TotalThroughput(std::span<const Demand> demands, Duration ts) {
  if (ts.ms() == 0.0) {
    if (AllEmpty(demands)) return 0.0;
    ThrowInvalid("total throughput needs ts > 0 when a queue is nonempty");
  }
  double bits = 0.0;
  for (const Demand& d : demands)
    bits += std::min(d.queue_bits, d.rate_bps * ts.seconds());
  return bits / ts.seconds();
}

bool AllEmpty(std::span<const Demand> demands) {
  return std::all_of(demands.begin(), demands.end(),
                     [](const Demand& d) { return d.queue_bits <= 0.0; });
}

Duration MinRequired(std::span<const Demand> demands) {
  bool any = false;
  Duration best;
  for (const Demand& d : demands) {
    if (d.queue_bits <= 0.0) continue;
    if (!any || d.required < best) best = d.required;
    any = true;
  }
  return any ? best : Duration::Zero();
}

Duration MaxRequired(std::span<const Demand> demands) {
  Duration best;
  for (const Demand& d : demands) best = std::max(best, d.required);
  return best;
}

SlotDecision EvaluateSlot(std::span<const Demand> demands, Duration ts,
                          double power_watts) {
  SlotDecision out{ts, {}};
  out.per_user.reserve(demands.size());
  for (const Demand& d : demands) {
    UserOutcome u;
    u.padding = PaddingOverhead(ts, d.required);
    u.emptied = FairnessIndicator(ts, d.required);
    // An emptied user drains exactly; R*ts can round a hair below Q.
    u.served_bits = u.emptied
                        ? d.queue_bits
                        : std::min(d.queue_bits, d.rate_bps * ts.seconds());
    u.energy_mj = SlotEnergyMj(ts, power_watts);
    out.per_user.push_back(u);
  }
  return out;
}

}  // namespace ofdma
