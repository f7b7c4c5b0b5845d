#include "ofdma/types.hpp"

#include <algorithm>
#include <cmath>

namespace ofdma {

std::string ToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kFixed:
      return "fixed";
    case PolicyKind::kThroughputOptimal:
      return "throughput_optimal";
    case PolicyKind::kDppdu:
      return "dppdu";
    case PolicyKind::kEadppdu:
      return "eadppdu";
  }
  return "unknown";
}

PolicyKind PolicyKindFromString(const std::string& name) {
  if (name == "fixed" || name == "fppdu") return PolicyKind::kFixed;
  if (name == "throughput_optimal") return PolicyKind::kThroughputOptimal;
  if (name == "dppdu") return PolicyKind::kDppdu;
  if (name == "eadppdu") return PolicyKind::kEadppdu;
  ThrowConfig("policy: unknown kind '" + name +
              "' (expected fixed|throughput_optimal|dppdu|eadppdu)");
}

DurationGrid::DurationGrid(std::vector<Duration> values, Duration ts_max)
    : values_(std::move(values)), ts_max_(ts_max) {
  if (values_.empty()) ThrowConfig("ts_grid: must not be empty");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i]))
      ThrowConfig("ts_grid: values must be strictly increasing");
  }
  if (values_.back() > ts_max_)
    ThrowConfig("ts_grid: every value must be <= ts_max_ms");
}

DurationGrid DurationGrid::Range(double start_ms, double step_ms,
                                 double stop_ms, Duration ts_max) {
  if (!(step_ms > 0.0)) ThrowConfig("ts_grid_step_ms: must be > 0");
  if (!(start_ms >= 0.0)) ThrowConfig("ts_grid_start_ms: must be >= 0");
  if (!(stop_ms >= start_ms))
    ThrowConfig("ts_grid_stop_ms: must be >= ts_grid_start_ms");
  // Integer microsecond arithmetic keeps 0.05*i from drifting off the
  // decimal grid; n/1e3 rounds to the same double as the literal.
  const auto start_us = std::llround(start_ms * 1e3);
  const auto step_us = std::llround(step_ms * 1e3);
  const auto stop_us = std::llround(stop_ms * 1e3);
  if (step_us <= 0) ThrowConfig("ts_grid_step_ms: must be >= 0.001");
  std::vector<Duration> values;
  for (long long us = start_us; us <= stop_us; us += step_us)
    values.push_back(Duration::FromMs(static_cast<double>(us) / 1e3));
  return DurationGrid(std::move(values), ts_max);
}

std::size_t DurationGrid::LowerBound(Duration d) const {
  return static_cast<std::size_t>(
      std::lower_bound(values_.begin(), values_.end(), d) - values_.begin());
}

std::size_t DurationGrid::LastAtMost(Duration d) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), d);
  if (it == values_.begin()) return npos;
  return static_cast<std::size_t>(it - values_.begin()) - 1;
}

bool DurationGrid::Contains(Duration d, double tol_ms) const {
  return std::any_of(values_.begin(), values_.end(), [&](Duration v) {
    return std::abs(v.ms() - d.ms()) <= tol_ms;
  });
}

void PolicyConfig::Validate() const {
  if (grid.empty()) ThrowConfig("ts_grid: must not be empty");
  if ((kind == PolicyKind::kDppdu || kind == PolicyKind::kEadppdu) &&
      !(v_param > 0.0))
    ThrowConfig("v: must be > 0 for dppdu/eadppdu");
  if (!(padding_unit_ms > 0.0))
    ThrowConfig("padding_objective_unit: scale must be > 0");
  if (kind == PolicyKind::kFixed && !grid.Contains(fixed_ts))
    ThrowConfig("fixed_ts_ms: must be one of the ts_grid values");
}

}  // namespace ofdma
