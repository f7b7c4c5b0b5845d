#pragma once

// Scheduling-duration policies.
//
//   Fixed              announces the configured ts every slot (F-PPDU).
//   ThroughputOptimal  shortest grid duration covering T_min; aggregate
//                      goodput sum_k min(Q_k, R_k ts)/ts is non-increasing in
//                      ts, so this is the goodput maximiser on [T_min, T_max].
//   Dppdu              drift-plus-penalty padding minimiser under per-user
//                      buffer-emptying targets C_k:
//                        argmin_{ts in [T_min, T_max]} sum_k H_k(ts) - X_k/V F_k(ts)
//   Eadppdu            drift-plus-penalty emptying maximiser under per-user
//                      energy budgets E_k^tot:
//                        argmax_{ts in grid} sum_k F_k(ts) - Y_k/V E_k(ts)
//
// All optimisation happens over the configured discrete grid. Ties resolve to
// the smallest candidate.
//
// Candidate window for ThroughputOptimal and Dppdu: grid values from the
// smallest one >= T_min up to the smallest one >= T_max (the shortest
// announceable duration that lets every user finish), capped at the last grid
// value. If no grid value reaches T_min, the largest grid value is used and
// the choice is flagged as clamped.

#include <span>
#include <vector>

#include "ofdma/types.hpp"

namespace ofdma {

struct Choice {
  Duration ts;
  bool clamped = false;
};

// Inclusive index range [first, last] into the grid.
struct CandidateWindow {
  std::size_t first = 0;
  std::size_t last = 0;
  bool clamped = false;
};

CandidateWindow BoundedWindow(std::span<const Demand> demands,
                              const DurationGrid& grid);

Duration FixedTs(const PolicyConfig& config);

Choice ThroughputOptimalTs(std::span<const Demand> demands,
                           const DurationGrid& grid);

// H_k enters as padding_ms / padding_unit_ms; E_k enters in mJ.
double DppduObjective(Duration ts, std::span<const Demand> demands,
                      std::span<const UserState> users, double v,
                      double padding_unit_ms);
double EadppduObjective(Duration ts, std::span<const Demand> demands,
                        std::span<const UserState> users, double v);

Choice DppduChooseTs(std::span<const Demand> demands,
                     std::span<const UserState> users,
                     const PolicyConfig& config);

Choice EadppduChooseTs(std::span<const Demand> demands,
                       std::span<const UserState> users,
                       const PolicyConfig& config);

// Dispatches on config.kind. Dynamic policies return ts = 0 when every queue
// is empty.
Choice ChooseTs(std::span<const Demand> demands,
                std::span<const UserState> users, const PolicyConfig& config);

// X_k <- max(X_k - F_k, 0) + C_k
inline double NextFairnessVq(double x, bool emptied, double target) {
  const double drained = x - (emptied ? 1.0 : 0.0);
  return (drained > 0.0 ? drained : 0.0) + target;
}

// Y_k <- max(Y_k - E_k^tot, 0) + E_k
inline double NextEnergyVq(double y, double budget_mj, double spent_mj) {
  const double drained = y - budget_mj;
  return (drained > 0.0 ? drained : 0.0) + spent_mj;
}

void UpdateFairnessVq(std::span<UserState> users,
                      std::span<const UserOutcome> outcomes);
void UpdateEnergyVq(std::span<UserState> users,
                    std::span<const UserOutcome> outcomes);

// Constant terms of the two Lyapunov drift bounds:
//   B1 = (sum_k C_k^2 + K) / 2
//   B2 = K (E_max^2 + (E_max^tot)^2) / 2
struct DriftBounds {
  double b1 = 0.0;
  double b2 = 0.0;
};

DriftBounds DriftBoundConstants(std::span<const double> fairness_targets,
                                double e_max_mj, double e_max_budget_mj);

}  // namespace ofdma
