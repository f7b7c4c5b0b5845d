#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "ofdma/config.hpp"
#include "ofdma/engine.hpp"

using namespace ofdma;

namespace {

SimConfig Sim(const std::string& json) { return ParseConfigText(json).sim; }

// One deterministic user needing exactly t_ms every slot.
SimConfig SingleUser(double t_ms, const std::string& extra) {
  return Sim(R"({"N": 1, "L": 1, "K": 1, "duration_shape": "inf", "duration_mean_ms": )" +
             std::to_string(t_ms) + ", " + extra + "}");
}

}  // namespace

TEST_CASE("exact fit gives full fairness and no padding") {
  const RunReport r = Run(SingleUser(
      1.0, R"("policy": "fixed", "fixed_ts_ms": 1, "horizon_slots": 100)"));
  const GroupMetrics& m = r.headline();
  CHECK(m.scheduled_slots == 100);
  CHECK(m.measured_slots == 50);
  CHECK(m.avg_f[0] == 1.0);
  CHECK(m.avg_h_tot_ms == 0.0);
  CHECK(m.avg_ts_ms == 1.0);
}

TEST_CASE("oversized fixed duration pads and spends energy") {
  const RunReport r = Run(SingleUser(
      1.0, R"("policy": "fixed", "fixed_ts_ms": 2, "horizon_slots": 100, "tx_power_w": 0.31)"));
  const GroupMetrics& m = r.headline();
  CHECK(m.avg_h_tot_ms == doctest::Approx(1.0));
  CHECK(m.avg_e_mj[0] == doctest::Approx(0.62));
  CHECK(m.avg_f[0] == 1.0);
  CHECK(m.avg_exchange_us == doctest::Approx(2000 + 58.6 + 16));
}

TEST_CASE("carry-over accumulates the unserved backlog") {
  const RunReport plain = Run(SingleUser(
      1.0, R"("policy": "fixed", "fixed_ts_ms": 0.5, "horizon_slots": 10)"));
  CHECK(plain.headline().avg_f[0] == 0.0);
  CHECK(plain.headline().avg_s_tot == 0.0);

  // Leftover data makes the next slot harder to finish.
  const std::string gamma =
      R"({"N": 1, "L": 1, "K": 1, "duration_mean_ms": 1, "duration_shape": 4,
          "policy": "fixed", "fixed_ts_ms": 1.5, "horizon_slots": 20000)";
  const double f_plain = Run(Sim(gamma + "}")).headline().avg_f[0];
  const double f_carry =
      Run(Sim(gamma + R"(, "carry_over": true})")).headline().avg_f[0];
  CHECK(f_plain > 0.8);
  CHECK(f_carry < f_plain);
}

TEST_CASE("round robin schedules every group floor or ceil of horizon/L times") {
  const RunReport r = Run(Sim(
      R"({"N": 15, "L": 3, "K": 5, "policy": "throughput_optimal", "horizon_slots": 1001})"));
  REQUIRE(r.groups.size() == 3);
  CHECK(r.groups[0].scheduled_slots == 334);
  CHECK(r.groups[1].scheduled_slots == 334);
  CHECK(r.groups[2].scheduled_slots == 333);
  for (int g = 0; g < 3; ++g) CHECK(r.groups[g].group_id == g + 1);
}

TEST_CASE("a group's trajectory does not depend on how many groups exist") {
  const RunReport one = Run(Sim(
      R"({"N": 5, "L": 1, "K": 5, "policy": "dppdu", "v": 500, "horizon_slots": 5000})"));
  const RunReport many = Run(Sim(
      R"({"N": 20, "L": 4, "K": 5, "policy": "dppdu", "v": 500, "horizon_slots": 20000})"));
  CHECK(one.headline().avg_h_tot_ms == many.headline().avg_h_tot_ms);
  CHECK(one.headline().avg_f == many.headline().avg_f);
}

TEST_CASE("identical groups produce matching statistics") {
  const RunReport r = Run(Sim(
      R"({"N": 100, "L": 20, "K": 5, "policy": "dppdu", "v": 1000, "horizon_slots": 400000})"));
  double mean_h = 0, mean_s = 0;
  for (const GroupMetrics& g : r.groups) {
    mean_h += g.avg_h_tot_ms / 20;
    mean_s += g.avg_s_tot / 20;
  }
  for (const GroupMetrics& g : r.groups) {
    CHECK(g.avg_h_tot_ms == doctest::Approx(mean_h).epsilon(0.05));
    CHECK(g.avg_s_tot == doctest::Approx(mean_s).epsilon(0.05));
  }
}

TEST_CASE("same seed gives identical reports, another seed differs") {
  const SimConfig c = Sim(
      R"({"N": 10, "L": 2, "K": 5, "policy": "eadppdu", "v": 1, "horizon_slots": 4000})");
  const RunReport a = Run(c), b = Run(c);
  CHECK(a.headline().avg_ts_ms == b.headline().avg_ts_ms);
  CHECK(a.headline().avg_y_sum == b.headline().avg_y_sum);
  SimConfig d = c;
  d.seed = 2;
  CHECK(Run(d).headline().avg_ts_ms != a.headline().avg_ts_ms);
}

TEST_CASE("virtual queues are only sampled, never negative") {
  const RunReport r = Run(Sim(
      R"({"N": 5, "L": 1, "K": 5, "policy": "dppdu", "v": 100, "horizon_slots": 4000,
          "trace": true, "trace_stride": 1})"));
  REQUIRE(r.trace.size() == 4000);
  for (const TracePoint& p : r.trace) {
    REQUIRE(p.x_sum >= 0.0);
    REQUIRE(p.y_sum >= 0.0);
  }
  CHECK(r.trace[0].x_sum == 0.0);
  CHECK(r.trace[1].x_sum > 0.0);
}

TEST_CASE("clamped choices are counted") {
  const RunReport r = Run(SingleUser(
      3.0, R"("policy": "dppdu", "v": 1, "ts_grid_ms": [0.5, 1, 2], "horizon_slots": 20)"));
  // Counted over every scheduled slot, warmup included.
  CHECK(r.headline().clamp_events == 20);
  CHECK(r.headline().avg_ts_ms == 2.0);
}

TEST_CASE("v sweep equals independent runs") {
  const SimConfig c = Sim(
      R"({"N": 5, "L": 1, "K": 5, "policy": "dppdu", "v": 1, "horizon_slots": 3000})");
  const std::vector<double> vs = {100, 1000};
  const auto sweep = VSweep(c, vs);
  REQUIRE(sweep.size() == 2);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    SimConfig one = c;
    one.policy.v_param = vs[i];
    CHECK(sweep[i].headline().avg_h_tot_ms == Run(one).headline().avg_h_tot_ms);
  }
  CHECK_THROWS_AS(VSweep(c, std::vector<double>{}), Error);
  CHECK_THROWS_AS(VSweep(c, std::vector<double>{-1}), Error);
}

TEST_CASE("drift bound constants are reported") {
  const RunReport r = Run(Sim(
      R"({"N": 5, "L": 1, "K": 5, "policy": "dppdu", "v": 1, "horizon_slots": 10})"));
  CHECK(r.bounds.b1 == doctest::Approx(3.55625));
  CHECK(r.bounds.b2 > 0.0);
}

TEST_CASE("fixed search on a deterministic single user") {
  const SearchResult s = HypotheticalFixedSearch(
      SingleUser(0.97, R"("policy": "fixed", "fixed_ts_ms": 1, "ts_grid_ms": [0.5, 1, 1.5, 2],
                          "fairness_target": 0.65, "horizon_slots": 200)"),
      SearchProblem::kPadding);
  REQUIRE(s.best.has_value());
  REQUIRE(s.candidates.size() == 4);
  const GroupMetrics& best = s.candidates[*s.best].headline();
  CHECK(s.candidates[*s.best].config.policy.fixed_ts.ms() == 1.0);
  CHECK(best.avg_h_tot_ms == doctest::Approx(0.03));
}

TEST_CASE("fixed search with a single feasible candidate returns it") {
  const SearchResult s = HypotheticalFixedSearch(
      SingleUser(1.0, R"("policy": "fixed", "fixed_ts_ms": 1, "ts_grid_ms": [1],
                          "horizon_slots": 50)"),
      SearchProblem::kPadding);
  REQUIRE(s.best.has_value());
  CHECK(*s.best == 0);
}

TEST_CASE("infeasible search reports a diagnostic") {
  const SearchResult s = HypotheticalFixedSearch(
      SingleUser(3.0, R"("policy": "fixed", "fixed_ts_ms": 1, "ts_grid_ms": [0.5, 1, 2],
                          "horizon_slots": 50)"),
      SearchProblem::kPadding);
  CHECK_FALSE(s.best.has_value());
  CHECK_FALSE(s.diagnostic.empty());
}

TEST_CASE("energy search maximises emptying within the budget") {
  // Budget 1.2 * 1 ms * P allows ts up to 1.2 ms; 1.0 already empties.
  const SearchResult s = HypotheticalFixedSearch(
      SingleUser(1.0, R"("policy": "fixed", "fixed_ts_ms": 1, "ts_grid_ms": [0.5, 1, 1.5, 2],
                          "horizon_slots": 50)"),
      SearchProblem::kEnergy);
  REQUIRE(s.best.has_value());
  CHECK(s.candidates[*s.best].config.policy.fixed_ts.ms() == 1.0);
}
