#include "ofdma/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "ofdma/model.hpp"

namespace ofdma {

void SimConfig::Validate() const {
  if (num_groups < 1) ThrowConfig("L: must be >= 1");
  if (users_per_group < 1) ThrowConfig("K: must be >= 1");
  const auto k_users = static_cast<std::size_t>(users_per_group);
  traffic.Validate(users_per_group);
  policy.Validate();
  if (fairness_targets.size() != k_users)
    ThrowConfig("fairness_target: expected one entry per user");
  for (double c : fairness_targets)
    if (!(c > 0.0 && c <= 1.0))
      ThrowConfig("fairness_target: every C_k must lie in (0, 1]");
  if (energy_budgets_mj.size() != k_users)
    ThrowConfig("energy_budget_mj: expected one entry per user");
  for (double e : energy_budgets_mj)
    if (!(e > 0.0)) ThrowConfig("energy_budget_mj: every budget must be > 0");
  if (!(tx_power_watts > 0.0)) ThrowConfig("tx_power_w: must be > 0");
  timing.Validate();
  if (horizon_slots < static_cast<std::uint64_t>(num_groups))
    ThrowConfig("horizon_slots: must be >= L");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0))
    ThrowConfig("warmup_fraction: must lie in [0, 1)");
  if (trace && trace_stride == 0) ThrowConfig("trace_stride: must be >= 1");
}

bool GroupMetrics::AllFairnessOk() const {
  return std::all_of(fairness_ok.begin(), fairness_ok.end(),
                     [](bool b) { return b; });
}

bool GroupMetrics::AllEnergyOk() const {
  return std::all_of(energy_ok.begin(), energy_ok.end(),
                     [](bool b) { return b; });
}

namespace {

class Accumulator {
 public:
  Accumulator(int group_id, std::size_t users, std::uint64_t rounds,
              double warmup_fraction)
      : rounds_(rounds),
        warmup_(static_cast<std::uint64_t>(
            std::floor(static_cast<double>(rounds) * warmup_fraction))),
        f_(users), e_(users), h_(users) {
    out_.group_id = group_id;
    out_.scheduled_slots = rounds;
  }

  void Add(std::uint64_t round, const SlotDecision& slot, double x_sum,
           double y_sum, double exchange_us, bool clamped) {
    const std::size_t q = std::min<std::size_t>(3, round * 4 / rounds_);
    x_quarter_[q] += x_sum;
    y_quarter_[q] += y_sum;
    ++quarter_n_[q];
    if (clamped) ++out_.clamp_events;
    if (round < warmup_) return;

    ++n_;
    ts_ += slot.ts_chosen.ms();
    exchange_ += exchange_us;
    x_ += x_sum;
    y_ += y_sum;
    for (std::size_t k = 0; k < slot.per_user.size(); ++k) {
      const UserOutcome& u = slot.per_user[k];
      h_[k] += u.padding.ms();
      f_[k] += u.emptied ? 1.0 : 0.0;
      e_[k] += u.energy_mj;
    }
  }

  GroupMetrics Finish(std::span<const double> targets,
                      std::span<const double> budgets) {
    const double n = n_ > 0 ? static_cast<double>(n_) : 1.0;
    out_.measured_slots = n_;
    out_.avg_ts_ms = ts_ / n;
    out_.avg_exchange_us = exchange_ / n;
    out_.avg_x_sum = x_ / n;
    out_.avg_y_sum = y_ / n;
    for (std::size_t k = 0; k < f_.size(); ++k) {
      out_.avg_h_ms.push_back(h_[k] / n);
      out_.avg_f.push_back(f_[k] / n);
      out_.avg_e_mj.push_back(e_[k] / n);
      out_.avg_h_tot_ms += out_.avg_h_ms.back();
      out_.avg_s_tot += out_.avg_f.back();
      out_.fairness_ok.push_back(out_.avg_f.back() >= targets[k]);
      out_.energy_ok.push_back(out_.avg_e_mj.back() <= budgets[k]);
    }
    for (std::size_t q = 0; q < 4; ++q) {
      const double m = quarter_n_[q] > 0 ? static_cast<double>(quarter_n_[q]) : 1.0;
      out_.x_sum_quarter_mean[q] = x_quarter_[q] / m;
      out_.y_sum_quarter_mean[q] = y_quarter_[q] / m;
    }
    return out_;
  }

 private:
  std::uint64_t rounds_;
  std::uint64_t warmup_;
  std::uint64_t n_ = 0;
  double ts_ = 0.0;
  double exchange_ = 0.0;
  double x_ = 0.0;
  double y_ = 0.0;
  std::vector<double> f_;
  std::vector<double> e_;
  std::vector<double> h_;
  std::array<double, 4> x_quarter_{};
  std::array<double, 4> y_quarter_{};
  std::array<std::uint64_t, 4> quarter_n_{};
  GroupMetrics out_;
};

struct GroupSim {
  GroupState state;
  GroupTraffic traffic;
  Accumulator acc;
  std::uint64_t round = 0;
};

double SumFairnessVq(const GroupState& g) {
  double s = 0.0;
  for (const UserState& u : g.users) s += u.fairness_vq;
  return s;
}

double SumEnergyVq(const GroupState& g) {
  double s = 0.0;
  for (const UserState& u : g.users) s += u.energy_vq;
  return s;
}

// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads. Results
// land in caller-owned slots, so output order never depends on scheduling.
template <typename Fn>
void ParallelFor(std::size_t n, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(
      n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

RunReport Run(const SimConfig& config) {
  config.Validate();
  const auto groups = static_cast<std::uint64_t>(config.num_groups);
  const auto k_users = static_cast<std::size_t>(config.users_per_group);
  const MacOverhead overhead(config.timing);

  std::vector<GroupSim> sims;
  sims.reserve(groups);
  for (std::uint64_t g = 0; g < groups; ++g) {
    GroupState state{static_cast<int>(g + 1), {}};
    for (std::size_t k = 0; k < k_users; ++k) {
      UserState u;
      u.fairness_target = config.fairness_targets[k];
      u.energy_budget_mj = config.energy_budgets_mj[k];
      u.tx_power_watts = config.tx_power_watts;
      state.users.push_back(u);
    }
    const std::uint64_t rounds = (config.horizon_slots - g + groups - 1) / groups;
    sims.push_back({std::move(state),
                    GroupTraffic(config.traffic, config.seed, static_cast<int>(g)),
                    Accumulator(static_cast<int>(g + 1), k_users, rounds,
                                config.warmup_fraction)});
  }

  RunReport report;
  report.config = config;

  for (std::uint64_t t = 0; t < config.horizon_slots; ++t) {
    GroupSim& sim = sims[t % groups];
    std::vector<UserState>& users = sim.state.users;

    const std::vector<Demand> demands = sim.traffic.SampleSlotDemands(users);
    const double x_sum = SumFairnessVq(sim.state);
    const double y_sum = SumEnergyVq(sim.state);
    const Choice choice = ChooseTs(demands, users, config.policy);
    const SlotDecision slot =
        EvaluateSlot(demands, choice.ts, config.tx_power_watts);

    for (std::size_t k = 0; k < k_users; ++k) {
      users[k].queue_bits = slot.per_user[k].emptied
                                ? 0.0
                                : users[k].queue_bits - slot.per_user[k].served_bits;
    }
    UpdateFairnessVq(users, slot.per_user);
    UpdateEnergyVq(users, slot.per_user);

    const double exchange_us =
        overhead
            .TotalExchangeTime(config.policy.kind, choice.ts,
                               config.users_per_group)
            .us();
    sim.acc.Add(sim.round, slot, x_sum, y_sum, exchange_us, choice.clamped);

    if (config.trace && t % groups == 0 && sim.round % config.trace_stride == 0)
      report.trace.push_back({t, sim.round, choice.ts.ms(), x_sum, y_sum});
    ++sim.round;
  }

  for (GroupSim& sim : sims)
    report.groups.push_back(
        sim.acc.Finish(config.fairness_targets, config.energy_budgets_mj));

  const double e_max = config.policy.ts_max().ms() * config.tx_power_watts;
  const double e_budget_max = *std::max_element(
      config.energy_budgets_mj.begin(), config.energy_budgets_mj.end());
  report.bounds =
      DriftBoundConstants(config.fairness_targets, e_max, e_budget_max);
  return report;
}

std::vector<RunReport> VSweep(const SimConfig& config,
                              std::span<const double> v_values) {
  if (v_values.empty()) ThrowConfig("v_list: must not be empty");
  for (double v : v_values)
    if (!(v > 0.0)) ThrowConfig("v_list: every V must be > 0");
  std::vector<RunReport> out(v_values.size());
  ParallelFor(v_values.size(), [&](std::size_t i) {
    SimConfig c = config;
    c.policy.v_param = v_values[i];
    out[i] = Run(c);
  });
  return out;
}

std::string ToString(SearchProblem problem) {
  return problem == SearchProblem::kPadding ? "padding" : "energy";
}

SearchProblem SearchProblemFromString(const std::string& name) {
  if (name == "padding") return SearchProblem::kPadding;
  if (name == "energy") return SearchProblem::kEnergy;
  ThrowConfig("problem: expected padding|energy, got '" + name + "'");
}

SearchResult HypotheticalFixedSearch(const SimConfig& config,
                                     SearchProblem problem) {
  const DurationGrid& grid = config.policy.grid;
  if (grid.empty()) ThrowConfig("ts_grid: must not be empty");

  SearchResult result;
  result.problem = problem;
  result.candidates.resize(grid.size());
  ParallelFor(grid.size(), [&](std::size_t i) {
    SimConfig c = config;
    c.policy.kind = PolicyKind::kFixed;
    c.policy.fixed_ts = grid[i];
    c.trace = false;
    result.candidates[i] = Run(c);
  });

  // Least-violating candidate, for the diagnostic when nothing is feasible.
  double least_violation = std::numeric_limits<double>::infinity();
  std::size_t least_idx = 0;
  std::size_t least_user = 0;

  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const GroupMetrics& m = result.candidates[i].headline();
    const bool feasible = problem == SearchProblem::kPadding
                              ? m.AllFairnessOk()
                              : m.AllEnergyOk();
    if (feasible) {
      if (!result.best) {
        result.best = i;
        continue;
      }
      const GroupMetrics& b = result.candidates[*result.best].headline();
      const bool better = problem == SearchProblem::kPadding
                              ? m.avg_h_tot_ms < b.avg_h_tot_ms
                              : m.avg_s_tot > b.avg_s_tot;
      if (better) result.best = i;
      continue;
    }
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_user = 0;
    for (std::size_t k = 0; k < m.avg_f.size(); ++k) {
      const double violation =
          problem == SearchProblem::kPadding
              ? config.fairness_targets[k] - m.avg_f[k]
              : m.avg_e_mj[k] - config.energy_budgets_mj[k];
      if (violation > worst) {
        worst = violation;
        worst_user = k;
      }
    }
    if (worst < least_violation) {
      least_violation = worst;
      least_idx = i;
      least_user = worst_user;
    }
  }

  if (!result.best) {
    std::ostringstream msg;
    msg << "no fixed ts satisfies every "
        << (problem == SearchProblem::kPadding ? "fairness" : "energy")
        << " constraint; least violating ts=" << grid[least_idx].ms()
        << " ms misses user " << (least_user + 1) << " by " << least_violation;
    result.diagnostic = msg.str();
  }
  return result;
}

}  // namespace ofdma
