#include "ofdma/policies.hpp"

#include <algorithm>

#include "ofdma/model.hpp"

namespace ofdma {

namespace {

// Both objectives are piecewise monotone in ts between consecutive grid values
// at which some F_k flips, so only the first grid value of each piece can win.
// Pieces start at the window's first value and at the first value >= T_k.
std::vector<std::size_t> BreakpointCandidates(std::span<const Demand> demands,
                                              const DurationGrid& grid,
                                              std::size_t first,
                                              std::size_t last) {
  std::vector<std::size_t> idx{first};
  for (const Demand& d : demands) {
    const std::size_t i = grid.LowerBound(d.required);
    if (i > first && i <= last) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace

CandidateWindow BoundedWindow(std::span<const Demand> demands,
                              const DurationGrid& grid) {
  const std::size_t lo = grid.LowerBound(MinRequired(demands));
  if (lo == grid.size()) return {grid.size() - 1, grid.size() - 1, true};
  const std::size_t hi =
      std::min(grid.LowerBound(MaxRequired(demands)), grid.size() - 1);
  return {lo, hi, false};
}

Duration FixedTs(const PolicyConfig& config) {
  if (!config.grid.Contains(config.fixed_ts))
    ThrowConfig("fixed_ts_ms: must be one of the ts_grid values");
  return config.fixed_ts;
}

Choice ThroughputOptimalTs(std::span<const Demand> demands,
                           const DurationGrid& grid) {
  if (AllEmpty(demands)) return {Duration::Zero(), false};
  const CandidateWindow w = BoundedWindow(demands, grid);
  return {grid[w.first], w.clamped};
}

double DppduObjective(Duration ts, std::span<const Demand> demands,
                      std::span<const UserState> users, double v,
                      double padding_unit_ms) {
  double obj = 0.0;
  for (std::size_t k = 0; k < demands.size(); ++k) {
    const double h =
        PaddingOverhead(ts, demands[k].required).ms() / padding_unit_ms;
    const double f = FairnessIndicator(ts, demands[k].required) ? 1.0 : 0.0;
    obj += h - (users[k].fairness_vq / v) * f;
  }
  return obj;
}

double EadppduObjective(Duration ts, std::span<const Demand> demands,
                        std::span<const UserState> users, double v) {
  double obj = 0.0;
  for (std::size_t k = 0; k < demands.size(); ++k) {
    const double f = FairnessIndicator(ts, demands[k].required) ? 1.0 : 0.0;
    const double e = SlotEnergyMj(ts, users[k].tx_power_watts);
    obj += f - (users[k].energy_vq / v) * e;
  }
  return obj;
}

Choice DppduChooseTs(std::span<const Demand> demands,
                     std::span<const UserState> users,
                     const PolicyConfig& config) {
  if (AllEmpty(demands)) return {Duration::Zero(), false};
  const DurationGrid& grid = config.grid;
  const CandidateWindow w = BoundedWindow(demands, grid);
  if (w.clamped) return {grid[w.first], true};

  std::size_t best = w.first;
  double best_obj = 0.0;
  bool have = false;
  for (std::size_t i : BreakpointCandidates(demands, grid, w.first, w.last)) {
    const double obj = DppduObjective(grid[i], demands, users, config.v_param,
                                      config.padding_unit_ms);
    if (!have || obj < best_obj) {
      best = i;
      best_obj = obj;
      have = true;
    }
  }
  return {grid[best], false};
}

Choice EadppduChooseTs(std::span<const Demand> demands,
                       std::span<const UserState> users,
                       const PolicyConfig& config) {
  if (AllEmpty(demands)) return {Duration::Zero(), false};
  const DurationGrid& grid = config.grid;
  std::size_t best = 0;
  double best_obj = 0.0;
  bool have = false;
  for (std::size_t i : BreakpointCandidates(demands, grid, 0, grid.size() - 1)) {
    const double obj =
        EadppduObjective(grid[i], demands, users, config.v_param);
    if (!have || obj > best_obj) {
      best = i;
      best_obj = obj;
      have = true;
    }
  }
  return {grid[best], false};
}

Choice ChooseTs(std::span<const Demand> demands,
                std::span<const UserState> users, const PolicyConfig& config) {
  switch (config.kind) {
    case PolicyKind::kFixed:
      return {config.fixed_ts, false};
    case PolicyKind::kThroughputOptimal:
      return ThroughputOptimalTs(demands, config.grid);
    case PolicyKind::kDppdu:
      return DppduChooseTs(demands, users, config);
    case PolicyKind::kEadppdu:
      return EadppduChooseTs(demands, users, config);
  }
  return {};
}

void UpdateFairnessVq(std::span<UserState> users,
                      std::span<const UserOutcome> outcomes) {
  for (std::size_t k = 0; k < users.size(); ++k)
    users[k].fairness_vq = NextFairnessVq(
        users[k].fairness_vq, outcomes[k].emptied, users[k].fairness_target);
}

void UpdateEnergyVq(std::span<UserState> users,
                    std::span<const UserOutcome> outcomes) {
  for (std::size_t k = 0; k < users.size(); ++k)
    users[k].energy_vq = NextEnergyVq(
        users[k].energy_vq, users[k].energy_budget_mj, outcomes[k].energy_mj);
}

DriftBounds DriftBoundConstants(std::span<const double> fairness_targets,
                                double e_max_mj, double e_max_budget_mj) {
  const double k = static_cast<double>(fairness_targets.size());
  double sum_c2 = 0.0;
  for (double c : fairness_targets) sum_c2 += c * c;
  return {0.5 * (sum_c2 + k),
          0.5 * k * (e_max_mj * e_max_mj + e_max_budget_mj * e_max_budget_mj)};
}

}  // namespace ofdma
