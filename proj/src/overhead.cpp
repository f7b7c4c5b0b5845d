#include "ofdma/overhead.hpp"

#include <cmath>

namespace ofdma {

void MacTimingConfig::Validate() const {
  if (!(sifs_us > 0.0)) ThrowConfig("sifs_us: must be > 0");
  if (!(pifs_us > 0.0)) ThrowConfig("pifs_us: must be > 0");
  if (!(mac_phy_preamble_us > 0.0))
    ThrowConfig("mac_phy_preamble_us: must be > 0");
  if (!(per_user_info_us > 0.0)) ThrowConfig("per_user_info_us: must be > 0");
}

ProtocolTime ProtocolTime::FromUs(double us) {
  return ProtocolTime(std::llround(us * 1000.0));
}

ProtocolTime ProtocolTime::FromDuration(Duration d) {
  return ProtocolTime(std::llround(d.ms() * 1e6));
}

MacOverhead::MacOverhead(const MacTimingConfig& cfg)
    : cfg_(cfg),
      sifs_(ProtocolTime::FromUs(cfg.sifs_us)),
      pifs_(ProtocolTime::FromUs(cfg.pifs_us)),
      preamble_(ProtocolTime::FromUs(cfg.mac_phy_preamble_us)),
      per_user_(ProtocolTime::FromUs(cfg.per_user_info_us)) {
  cfg_.Validate();
}

ProtocolTime MacOverhead::TriggerFrameTime(int num_users) const {
  if (num_users < 1) ThrowInvalid("trigger frame needs at least one user");
  return preamble_ + per_user_ * num_users;
}

ProtocolTime MacOverhead::TotalExchangeTime(PolicyKind kind, Duration ts,
                                            int num_users) const {
  const ProtocolTime base =
      ProtocolTime::FromDuration(ts) + TriggerFrameTime(num_users);
  if (kind == PolicyKind::kFixed) return base + sifs_;
  return base + SingleUserFrameTime() * 2 + sifs_ * 2 + pifs_;
}

ProtocolTime MacOverhead::DynamicSurcharge() const {
  return sifs_ + pifs_ + SingleUserFrameTime() * 2;
}

bool MacOverhead::DppduBreakeven(Duration ts_fixed, Duration t_min) const {
  const ProtocolTime saved =
      ProtocolTime::FromDuration(ts_fixed) - ProtocolTime::FromDuration(t_min);
  return saved > DynamicSurcharge();
}

}  // namespace ofdma
