#pragma once

// Per-slot formulas shared by every policy and the simulation engine.

#include <span>

#include "ofdma/types.hpp"

namespace ofdma {

// Time needed to drain queue_bits at rate_bps. Throws kInvalidInput when
// rate_bps <= 0.
Duration RequiredDuration(double queue_bits, double rate_bps);

struct QueueUpdate {
  UserState user;
  double served_bits = 0.0;
};

// Q' = max(Q - R*ts*1{scheduled}, 0) + arrivals.
QueueUpdate ApplyQueueUpdate(const UserState& user, Duration ts, bool scheduled,
                             double arrivals_bits);

// H_k: idle fill a user transmits after its data to reach ts.
inline Duration PaddingOverhead(Duration ts, Duration t_k) {
  return ts > t_k ? Duration::FromMs(ts.ms() - t_k.ms()) : Duration::Zero();
}

// F_k: the user empties its buffer within ts. Equality counts.
inline bool FairnessIndicator(Duration ts, Duration t_k) { return ts >= t_k; }

// Energy of one scheduled user for the slot, in mJ. Padding costs the same as
// data because the user transmits for the whole of ts.
inline double SlotEnergyMj(Duration ts, double power_watts) {
  return ts.ms() * power_watts;
}

// Aggregate goodput sum_k min(Q_k, R_k*ts) / ts in bits/s.
double TotalThroughput(std::span<const Demand> demands, Duration ts);

// Smallest / largest T_k among users with a nonempty queue. Zero when every
// queue is empty.
Duration MinRequired(std::span<const Demand> demands);
Duration MaxRequired(std::span<const Demand> demands);
bool AllEmpty(std::span<const Demand> demands);

// Evaluates one slot for the given ts without touching any state.
SlotDecision EvaluateSlot(std::span<const Demand> demands, Duration ts,
                          double power_watts);

// Relative energy saving of policy A over policy B at equal transmit power:
// 1 - avg_ts_a / avg_ts_b.
inline double EnergyGainFraction(double avg_ts_a_ms, double avg_ts_b_ms) {
  return 1.0 - avg_ts_a_ms / avg_ts_b_ms;
}

}  // namespace ofdma
