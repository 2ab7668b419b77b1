// Copyright 2026 The renewalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "renewal/dist.hpp"
#include "renewal/rng.hpp"
#include "renewal/simulate.hpp"
#include "renewal/stats.hpp"

using renewal::dkw_epsilon;
using renewal::Ecdf;
using renewal::InterArrivalLaw;
using renewal::ks_distance;
using renewal::ratio;
using renewal::renewal_function_mc;
using renewal::ReplicationPlan;
using renewal::RngStream;
using renewal::run_ratio_experiment;
using renewal::run_snapshots;
using renewal::Snapshot;
using renewal::snapshot;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("snapshot before the first possible arrival") {
  // Pareto inter-arrivals are >= xm, so at t < xm no renewal has happened:
  // the age is all of t and the straddling cycle is the first draw.
  const auto law = InterArrivalLaw::pareto(0.5, 1.0);
  RngStream rng(7, 0);
  const Snapshot s = snapshot(law, 0.5, rng);
  CHECK(s.count == 0);
  CHECK(s.t == 0.5);
  CHECK(s.age == 0.5);
  CHECK(s.residual >= 0.5);  // first draw >= xm = 1
  CHECK(s.cycle == s.age + s.residual);
}

TEST_CASE("snapshot invariants hold across laws and replications") {
  const InterArrivalLaw laws[] = {
      InterArrivalLaw::pareto(0.5, 1.0),
      InterArrivalLaw::pareto(2.0, 0.5),
      InterArrivalLaw::exponential(1.0),
      InterArrivalLaw::pareto_log(0.5, 7.5, 1.0),
  };
  const double t = 10.0;
  for (const auto& law : laws) {
    for (std::uint64_t k = 0; k < 300; ++k) {
      RngStream rng(31, k);
      const Snapshot s = snapshot(law, t, rng);
      CHECK(s.t == t);
      CHECK(s.age >= 0.0);
      CHECK(s.age <= t);
      CHECK(s.residual > 0.0);
      CHECK(s.cycle == s.age + s.residual);
      const double v = ratio(s);
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("snapshot count is coupled monotonically in t") {
  // Re-running the same substream replays the same path, so a later
  // inspection time can only see more renewals.
  const auto law = InterArrivalLaw::pareto(0.7, 1.0);
  for (std::uint64_t k = 0; k < 100; ++k) {
    RngStream a(555, k);
    RngStream b(555, k);
    const Snapshot s1 = snapshot(law, 30.0, a);
    const Snapshot s2 = snapshot(law, 70.0, b);
    CHECK(s1.count <= s2.count);
    if (s1.count == s2.count) {
      // Same straddling cycle, inspected 40 time units later.
      CHECK(s2.age == doctest::Approx(s1.age + 40.0).epsilon(1e-12));
      CHECK(s2.cycle == doctest::Approx(s1.cycle).epsilon(1e-12));
    }
  }
}

TEST_CASE("snapshot validates t") {
  const auto law = InterArrivalLaw::exponential(1.0);
  RngStream rng(1, 0);
  CHECK_THROWS_AS(snapshot(law, 0.0, rng), std::domain_error);
  CHECK_THROWS_AS(snapshot(law, -1.0, rng), std::domain_error);
  CHECK_THROWS_AS(snapshot(law, std::numeric_limits<double>::infinity(), rng),
                  std::domain_error);
}

TEST_CASE("run_snapshots replication i uses substream i") {
  ReplicationPlan plan{InterArrivalLaw::pareto(0.5, 1.0), 25.0, 1, 97};
  const auto got = run_snapshots(plan);
  RngStream rng(97, 0);
  const Snapshot want = snapshot(plan.law, plan.t, rng);
  REQUIRE(got.size() == 1);
  CHECK(got[0].age == want.age);
  CHECK(got[0].residual == want.residual);
  CHECK(got[0].cycle == want.cycle);
  CHECK(got[0].count == want.count);
}

TEST_CASE("run_snapshots is bitwise identical across worker counts") {
  ReplicationPlan plan{InterArrivalLaw::pareto(0.7, 1.0), 50.0, 200, 1234};
  const auto serial = run_snapshots(plan, 1);
  const auto parallel = run_snapshots(plan, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].age == parallel[i].age);
    CHECK(serial[i].residual == parallel[i].residual);
    CHECK(serial[i].count == parallel[i].count);
  }
  // run_ratio_experiment shares the substream scheme.
  const auto ratios = run_ratio_experiment(plan, 2);
  REQUIRE(ratios.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(ratios[i] == ratio(serial[i]));
  }
}

TEST_CASE("run_snapshots validates the plan") {
  ReplicationPlan plan{InterArrivalLaw::exponential(1.0), 0.0, 10, 0};
  CHECK_THROWS_AS(run_snapshots(plan), std::domain_error);
  plan.t = 1.0;
  plan.n = 0;
  CHECK_THROWS_AS(run_snapshots(plan), std::domain_error);
}

TEST_CASE("ratio distribution before the first arrival is exactly known") {
  // At t < xm the ratio is t / X_1, so P(V <= r) = survival(t / r).
  ReplicationPlan plan{InterArrivalLaw::pareto(0.5, 1.0), 0.5, 5000, 2026};
  const auto ratios = run_ratio_experiment(plan);
  const auto& law = plan.law;
  const double t = plan.t;
  const double d = ks_distance(
      Ecdf(ratios), [&](double r) { return r <= 0.0 ? 0.0 : law.survival(t / r); });
  CHECK(d <= dkw_epsilon(plan.n, 1e-3));
}

TEST_CASE("exponential renewal counts match the Poisson mean") {
  // For exponential(rate) inter-arrivals, N(t) ~ Poisson(rate * t).
  ReplicationPlan plan{InterArrivalLaw::exponential(1.0), 100.0, 20000, 5150};
  const auto snaps = run_snapshots(plan);
  double mean_count = 0.0;
  for (const auto& s : snaps) mean_count += static_cast<double>(s.count);
  mean_count /= static_cast<double>(plan.n);
  // sd of the mean is sqrt(100 / 20000) = 0.07; allow a wide 1.0 band.
  CHECK(mean_count == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("renewal_function_mc matches the exponential closed form") {
  // u(t) = E[N(t)] + 1 = rate * t + 1.
  const auto est = renewal_function_mc(InterArrivalLaw::exponential(1.0), {10.0},
                                       10000, 31337);
  REQUIRE(est.t.size() == 1);
  CHECK(est.t[0] == 10.0);
  CHECK(est.u_hat[0] == doctest::Approx(11.0).epsilon(0.015));
  // Counts are Poisson(10), so se ~= sqrt(10 / n) = 0.0316; compare scaled
  // so the tolerance is meaningfully relative.
  CHECK(est.se[0] * 100.0 == doctest::Approx(std::sqrt(10.0)).epsilon(0.05));
}

TEST_CASE("renewal_function_mc is exact below the Pareto support") {
  const auto est = renewal_function_mc(InterArrivalLaw::pareto(0.5, 2.0),
                                       {0.5, 1.0}, 100, 1);
  CHECK(est.u_hat[0] == 1.0);
  CHECK(est.u_hat[1] == 1.0);
  CHECK(est.se[0] == 0.0);
  CHECK(est.se[1] == 0.0);
}

TEST_CASE("renewal_function_mc estimates are monotone on a grid") {
  const auto est = renewal_function_mc(InterArrivalLaw::exponential(2.0),
                                       {1.0, 5.0, 10.0}, 2000, 77);
  REQUIRE(est.u_hat.size() == 3);
  CHECK(est.u_hat[0] <= est.u_hat[1]);
  CHECK(est.u_hat[1] <= est.u_hat[2]);
  for (double s : est.se) CHECK(s >= 0.0);
  // Thread count does not change the estimate: integer reductions are exact.
  const auto est4 = renewal_function_mc(InterArrivalLaw::exponential(2.0),
                                        {1.0, 5.0, 10.0}, 2000, 77, 4);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(est.u_hat[j] == est4.u_hat[j]);
    CHECK(est.se[j] == est4.se[j]);
  }
}

TEST_CASE("renewal_function_mc approaches the heavy-tail growth rate") {
  // For Pareto(1/2, 1), u(t) * survival(t) tends to 2/pi.
  const auto law = InterArrivalLaw::pareto(0.5, 1.0);
  const double t = 1e6;
  const auto est = renewal_function_mc(law, {t}, 10000, 424242);
  const double product = est.u_hat[0] * law.survival(t);
  CHECK(product == doctest::Approx(2.0 / kPi).epsilon(0.1));
}

TEST_CASE("renewal_function_mc validates inputs") {
  const auto law = InterArrivalLaw::exponential(1.0);
  CHECK_THROWS_AS(renewal_function_mc(law, {}, 100, 1), std::domain_error);
  CHECK_THROWS_AS((renewal_function_mc(law, {1.0, 1.0}, 100, 1)), std::domain_error);
  CHECK_THROWS_AS((renewal_function_mc(law, {2.0, 1.0}, 100, 1)), std::domain_error);
  CHECK_THROWS_AS(renewal_function_mc(law, {-1.0}, 100, 1), std::domain_error);
  CHECK_THROWS_AS(renewal_function_mc(law, {1.0}, 1, 1), std::domain_error);
}
