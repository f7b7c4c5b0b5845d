#pragma once

// Domain types shared by the traffic, policy and engine layers.
//
// Units used throughout the library:
//   durations  milliseconds (Duration)
//   queues     bits
//   rates      bits/second
//   energy     millijoules (ms x W)

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofdma {

enum class ErrorCode {
  kInvalidInput = 1,
  kConfig = 2,
  kIo = 3,
  kInfeasible = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowInvalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}
[[noreturn]] inline void ThrowConfig(const std::string& what) {
  throw Error(ErrorCode::kConfig, what);
}

// Non-negative time span stored in milliseconds.
class Duration {
 public:
  constexpr Duration() = default;

  static constexpr Duration FromMs(double ms) {
    if (!(ms >= 0.0)) ThrowInvalid("duration must be non-negative");
    return Duration(ms);
  }
  static constexpr Duration FromUs(double us) { return FromMs(us / 1000.0); }
  static constexpr Duration Zero() { return Duration(0.0); }

  constexpr double ms() const { return ms_; }
  constexpr double us() const { return ms_ * 1000.0; }
  constexpr double seconds() const { return ms_ / 1000.0; }

  constexpr auto operator<=>(const Duration&) const = default;

  constexpr Duration operator+(Duration other) const {
    return Duration(ms_ + other.ms_);
  }

 private:
  constexpr explicit Duration(double ms) : ms_(ms) {}
  double ms_ = 0.0;
};

enum class PolicyKind { kFixed, kThroughputOptimal, kDppdu, kEadppdu };

std::string ToString(PolicyKind kind);
PolicyKind PolicyKindFromString(const std::string& name);

// Per-user state carried across a group's scheduled slots.
struct UserState {
  double queue_bits = 0.0;
  double rate_bps = 1.0;
  double fairness_vq = 0.0;       // X_k
  double energy_vq = 0.0;         // Y_k, mJ
  double fairness_target = 0.65;  // C_k in (0, 1]
  double energy_budget_mj = 1.0;  // E_k^tot per scheduled slot
  double tx_power_watts = 0.31;
};

struct GroupState {
  int group_id = 1;  // 1..L
  std::vector<UserState> users;
};

// What one user needs at the start of a scheduled slot.
struct Demand {
  Duration required;  // T_k = Q_k / R_k
  double queue_bits = 0.0;
  double rate_bps = 1.0;
};

struct UserOutcome {
  double served_bits = 0.0;
  Duration padding;      // H_k
  bool emptied = false;  // F_k
  double energy_mj = 0.0;
};

struct SlotDecision {
  Duration ts_chosen;
  std::vector<UserOutcome> per_user;
};

// Ordered candidate set of scheduling durations.
class DurationGrid {
 public:
  DurationGrid() = default;
  // Validates strict monotonicity and the ts_max bound.
  DurationGrid(std::vector<Duration> values, Duration ts_max);

  // start, start+step, ... up to stop inclusive, snapped to microsecond
  // resolution so that values compare equal to their decimal literals.
  static DurationGrid Range(double start_ms, double step_ms, double stop_ms,
                            Duration ts_max);

  const std::vector<Duration>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Duration operator[](std::size_t i) const { return values_[i]; }
  Duration ts_max() const { return ts_max_; }

  // Index of the first value >= d, or size() when none.
  std::size_t LowerBound(Duration d) const;
  // Index of the last value <= d, or npos when none.
  std::size_t LastAtMost(Duration d) const;
  bool Contains(Duration d, double tol_ms = 1e-9) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Duration> values_;
  Duration ts_max_;
};

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kDppdu;
  Duration fixed_ts;  // kFixed only
  double v_param = 1.0;
  DurationGrid grid;
  // Unit of the padding term inside the D-PPDU objective, in ms: 1000 weighs
  // H_k in seconds, 1 weighs it in milliseconds.
  double padding_unit_ms = 1000.0;

  Duration ts_max() const { return grid.ts_max(); }
  void Validate() const;
};

}  // namespace ofdma
