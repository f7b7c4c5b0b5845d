#pragma once

// Slot-synchronous round-robin simulator.
//
// Slot t schedules group g = t mod L. Only the scheduled group draws fresh
// demand, picks ts, drains its queues and updates its virtual queues; every
// other group is frozen. Time averages are taken per group over that group's
// own scheduled slots, after discarding a warm-up prefix.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofdma/overhead.hpp"
#include "ofdma/policies.hpp"
#include "ofdma/traffic.hpp"
#include "ofdma/types.hpp"

namespace ofdma {

struct SimConfig {
  int num_groups = 20;      // L
  int users_per_group = 5;  // K
  TrafficModel traffic = TrafficModel::Default(5);
  PolicyConfig policy;
  std::vector<double> fairness_targets;  // C_k, one per user
  std::vector<double> energy_budgets_mj;  // E_k^tot, one per user
  double tx_power_watts = 0.31;
  MacTimingConfig timing;
  std::uint64_t horizon_slots = 4'000'000;  // total slots over all groups
  std::uint64_t seed = 1;
  double warmup_fraction = 0.5;
  bool trace = false;
  std::uint64_t trace_stride = 100;  // in group-1 scheduled slots

  void Validate() const;
};

struct GroupMetrics {
  int group_id = 1;
  std::uint64_t scheduled_slots = 0;
  std::uint64_t measured_slots = 0;

  double avg_h_tot_ms = 0.0;
  double avg_ts_ms = 0.0;
  double avg_s_tot = 0.0;
  double avg_exchange_us = 0.0;
  std::vector<double> avg_f;     // per user
  std::vector<double> avg_e_mj;  // per user
  std::vector<double> avg_h_ms;  // per user
  std::vector<bool> fairness_ok;  // avg_f[k] >= C_k
  std::vector<bool> energy_ok;    // avg_e_mj[k] <= E_k^tot

  // Sum over users of X_k (resp. Y_k), averaged over the measured window and
  // over each quarter of the group's full run.
  double avg_x_sum = 0.0;
  double avg_y_sum = 0.0;
  std::array<double, 4> x_sum_quarter_mean{};
  std::array<double, 4> y_sum_quarter_mean{};

  std::uint64_t clamp_events = 0;

  bool AllFairnessOk() const;
  bool AllEnergyOk() const;
};

struct TracePoint {
  std::uint64_t slot = 0;
  std::uint64_t round = 0;
  double ts_ms = 0.0;
  double x_sum = 0.0;
  double y_sum = 0.0;
};

struct RunReport {
  SimConfig config;
  std::vector<GroupMetrics> groups;
  std::vector<TracePoint> trace;  // group 1 only, when enabled
  DriftBounds bounds;

  // Groups are statistically identical, so headline figures come from group 1.
  const GroupMetrics& headline() const { return groups.front(); }
};

RunReport Run(const SimConfig& config);

// One independent run per V, same seed and traffic for all.
std::vector<RunReport> VSweep(const SimConfig& config,
                              std::span<const double> v_values);

enum class SearchProblem { kPadding, kEnergy };

std::string ToString(SearchProblem problem);
SearchProblem SearchProblemFromString(const std::string& name);

struct SearchResult {
  SearchProblem problem = SearchProblem::kPadding;
  std::vector<RunReport> candidates;  // grid order, Fixed policy
  std::optional<std::size_t> best;    // index into candidates
  std::string diagnostic;             // set when best is empty
};

// Runs the Fixed policy once per grid value. For kPadding picks the lowest
// average H_tot among candidates whose every user meets avg F_k >= C_k; for
// kEnergy the highest average S_tot among those meeting avg E_k <= E_k^tot.
// Feasibility and ranking use the headline group.
SearchResult HypotheticalFixedSearch(const SimConfig& config,
                                     SearchProblem problem);

}  // namespace ofdma
