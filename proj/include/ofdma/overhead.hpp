#pragma once

// Protocol-time accounting for the two frame exchanges:
//
//   F-PPDU:  TF --SIFS--> PPDU(ts)
//   D-PPDU:  TF --SIFS--> BS --SIFS--> OT --PIFS--> PPDU(ts*)
//
// TF carries one user-info record per scheduled user, BS and OT carry one
// each. All arithmetic is done in integer nanoseconds so that sums and
// differences of the constants are exact.

#include <cstdint>

#include "ofdma/types.hpp"

namespace ofdma {

struct MacTimingConfig {
  double sifs_us = 16.0;
  double pifs_us = 25.0;
  double mac_phy_preamble_us = 56.0;
  double per_user_info_us = 2.6;
  // Control frames go out at the basic rate (6 Mbps for 802.11ac); the
  // per-user figure above already reflects it.

  void Validate() const;
};

// Exact protocol time. Durations are held at 1 ns resolution.
class ProtocolTime {
 public:
  constexpr ProtocolTime() = default;
  constexpr explicit ProtocolTime(std::int64_t ns) : ns_(ns) {}
  static ProtocolTime FromUs(double us);
  static ProtocolTime FromDuration(Duration d);

  constexpr std::int64_t ns() const { return ns_; }
  double us() const { return static_cast<double>(ns_) / 1000.0; }

  constexpr ProtocolTime operator+(ProtocolTime o) const {
    return ProtocolTime(ns_ + o.ns_);
  }
  constexpr ProtocolTime operator-(ProtocolTime o) const {
    return ProtocolTime(ns_ - o.ns_);
  }
  constexpr ProtocolTime operator*(std::int64_t n) const {
    return ProtocolTime(ns_ * n);
  }
  constexpr auto operator<=>(const ProtocolTime&) const = default;

 private:
  std::int64_t ns_ = 0;
};

class MacOverhead {
 public:
  explicit MacOverhead(const MacTimingConfig& cfg = {});

  // 56 + 2.6*num_users us with the default constants.
  ProtocolTime TriggerFrameTime(int num_users) const;
  // BS and OT frames each carry a single user-info record.
  ProtocolTime SingleUserFrameTime() const { return TriggerFrameTime(1); }

  // Whole exchange including the PPDU itself. kFixed uses the F-PPDU
  // exchange, every dynamic policy uses the D-PPDU exchange.
  ProtocolTime TotalExchangeTime(PolicyKind kind, Duration ts,
                                 int num_users) const;

  // Extra protocol time the D-PPDU exchange spends over F-PPDU:
  // SIFS + PIFS + T_BS + T_OT.
  ProtocolTime DynamicSurcharge() const;

  // True when shortening the PPDU from ts_fixed to t_min saves more air time
  // than the extra D-PPDU signalling costs.
  bool DppduBreakeven(Duration ts_fixed, Duration t_min) const;

  const MacTimingConfig& config() const { return cfg_; }

 private:
  MacTimingConfig cfg_;
  ProtocolTime sifs_;
  ProtocolTime pifs_;
  ProtocolTime preamble_;
  ProtocolTime per_user_;
};

}  // namespace ofdma
