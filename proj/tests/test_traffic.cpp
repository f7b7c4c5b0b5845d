#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ofdma/traffic.hpp"

using namespace ofdma;

namespace {

std::vector<UserState> FreshUsers(int k) { return std::vector<UserState>(k); }

}  // namespace

TEST_CASE("degenerate law always returns its mean") {
  TrafficModel m;
  m.durations = {{1.0, std::numeric_limits<double>::infinity()}};
  GroupTraffic g(m, 1, 0);
  for (int i = 0; i < 100; ++i) CHECK(g.DrawDuration(0).ms() == 1.0);
}

TEST_CASE("gamma sample mean over 1e6 draws is within 1%") {
  TrafficModel m;
  m.durations = {{1.0, 4.0}};
  GroupTraffic g(m, 42, 0);
  double sum = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += g.DrawDuration(0).ms();
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("per-user means match within 2% and draws are positive") {
  const TrafficModel m = TrafficModel::Default(5);
  GroupTraffic g(m, 9, 3);
  for (std::size_t k = 0; k < 5; ++k) {
    double sum = 0;
    for (int i = 0; i < 100'000; ++i) {
      const double t = g.DrawDuration(k).ms();
      REQUIRE(t > 0.0);
      REQUIRE(std::isfinite(t));
      sum += t;
    }
    CHECK(sum / 1e5 == doctest::Approx(0.2 * (k + 1)).epsilon(0.02));
  }
}

TEST_CASE("identical seeds give identical demand sequences") {
  const TrafficModel m = TrafficModel::Default(5);
  GroupTraffic a(m, 123, 0), b(m, 123, 0), c(m, 124, 0);
  auto ua = FreshUsers(5), ub = FreshUsers(5), uc = FreshUsers(5);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto da = a.SampleSlotDemands(ua);
    const auto db = b.SampleSlotDemands(ub);
    const auto dc = c.SampleSlotDemands(uc);
    for (std::size_t k = 0; k < 5; ++k) {
      REQUIRE(da[k].required == db[k].required);
      REQUIRE(da[k].queue_bits == db[k].queue_bits);
      differs |= da[k].required != dc[k].required;
    }
  }
  CHECK(differs);
}

TEST_CASE("group streams are independent of each other") {
  const TrafficModel m = TrafficModel::Default(5);
  GroupTraffic g0(m, 5, 0), g1(m, 5, 1);
  CHECK(g0.DrawDuration(0) != g1.DrawDuration(0));
}

TEST_CASE("duration mode converts draws to bits at the reference rate") {
  TrafficModel m;
  m.durations = {{0.5, std::numeric_limits<double>::infinity()},
                 {1.5, std::numeric_limits<double>::infinity()}};
  m.reference_rate_bps = 2e6;
  GroupTraffic g(m, 1, 0);
  auto users = FreshUsers(2);
  const auto d = g.SampleSlotDemands(users);
  CHECK(d[0].required.ms() == doctest::Approx(0.5));
  CHECK(d[1].queue_bits == doctest::Approx(3000));
  CHECK(users[1].rate_bps == 2e6);
}

TEST_CASE("carry-over adds leftover backlog to fresh demand") {
  TrafficModel m;
  m.durations = {{1.0, std::numeric_limits<double>::infinity()}};
  m.reference_rate_bps = 1e6;

  auto users = FreshUsers(1);
  users[0].queue_bits = 400;  // left over from a previous slot
  GroupTraffic plain(m, 1, 0);
  CHECK(plain.SampleSlotDemands(users)[0].required.ms() == doctest::Approx(1.0));

  m.carry_over = true;
  users[0].queue_bits = 400;
  GroupTraffic carry(m, 1, 0);
  CHECK(carry.SampleSlotDemands(users)[0].required.ms() == doctest::Approx(1.4));
}

TEST_CASE("rate-set mode draws rates from the set") {
  TrafficModel m;
  m.mode = TrafficMode::kRateSet;
  m.rate_set_bps = {1e6, 5e6};
  m.arrival_mean_bits = {1000, 2000};
  m.Validate(2);
  GroupTraffic g(m, 3, 0);
  auto users = FreshUsers(2);
  double sum = 0;
  const int n = 50'000;
  for (int i = 0; i < n; ++i) {
    users[0].queue_bits = users[1].queue_bits = 0;
    const auto d = g.SampleSlotDemands(users);
    for (const Demand& x : d) {
      REQUIRE((x.rate_bps == 1e6 || x.rate_bps == 5e6));
      REQUIRE(x.queue_bits >= 0.0);
    }
    sum += d[1].queue_bits;
  }
  CHECK(sum / n == doctest::Approx(2000).epsilon(0.03));
}

TEST_CASE("traffic validation") {
  TrafficModel m = TrafficModel::Default(5);
  CHECK_NOTHROW(m.Validate(5));
  CHECK_THROWS_AS(m.Validate(4), Error);

  TrafficModel bad = m;
  bad.durations[2].mean_ms = 0.3;  // not increasing
  CHECK_THROWS_AS(bad.Validate(5), Error);

  bad = m;
  bad.durations[0].shape = 0.0;
  CHECK_THROWS_AS(bad.Validate(5), Error);

  bad = m;
  bad.reference_rate_bps = 0;
  CHECK_THROWS_AS(bad.Validate(5), Error);

  TrafficModel rs;
  rs.mode = TrafficMode::kRateSet;
  CHECK_THROWS_AS(rs.Validate(1), Error);
}
