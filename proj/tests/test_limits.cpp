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
#include <stdexcept>

#include "doctest.h"
#include "renewal/dist.hpp"
#include "renewal/limits.hpp"
#include "renewal/quadrature.hpp"

using renewal::beta_integral;
using renewal::dl_age_cdf;
using renewal::dl_joint_density;
using renewal::erickson_constant;
using renewal::InterArrivalLaw;
using renewal::LimitLaw;
using renewal::ratio_cdf_from_dl;
using renewal::ratio_limit_cdf;
using renewal::sizebiased_cycle_cdf;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ratio_limit_cdf is the power law x^alpha") {
  CHECK(ratio_limit_cdf(0.5, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  // Reference values computed with 30-digit arithmetic.
  CHECK(ratio_limit_cdf(0.3, 0.5) ==
        doctest::Approx(0.81225239635623552).epsilon(1e-14));
  CHECK(ratio_limit_cdf(0.7, 0.5) ==
        doctest::Approx(0.61557220667245814).epsilon(1e-14));
  CHECK(ratio_limit_cdf(0.42, 1.0) == 1.0);
  CHECK(ratio_limit_cdf(0.42, 0.0) == 0.0);
  // Clamped outside the support.
  CHECK(ratio_limit_cdf(0.42, -3.0) == 0.0);
  CHECK(ratio_limit_cdf(0.42, 7.0) == 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = ratio_limit_cdf(0.3, i / 1000.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(ratio_limit_cdf(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(ratio_limit_cdf(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(ratio_limit_cdf(-0.2, 0.5), std::domain_error);
}

TEST_CASE("beta_integral matches the reflection closed form") {
  CHECK(beta_integral(0.5) == doctest::Approx(kPi).epsilon(1e-12));
  // B(0.3, 0.7) = pi / sin(0.3 pi), 30-digit reference.
  CHECK(beta_integral(0.3) == doctest::Approx(3.8832220774509332).epsilon(1e-10));
  for (int i = 1; i < 20; ++i) {
    const double a = i / 20.0;
    CHECK(beta_integral(a) ==
          doctest::Approx(kPi / std::sin(kPi * a)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(beta_integral(0.0), std::domain_error);
  CHECK_THROWS_AS(beta_integral(1.0), std::domain_error);
  CHECK_THROWS_AS(beta_integral(-0.2), std::domain_error);
  CHECK_THROWS_AS(beta_integral(1.3), std::domain_error);
}

TEST_CASE("erickson_constant satisfies its defining normalization") {
  CHECK(erickson_constant(0.5) == doctest::Approx(2.0 / kPi).epsilon(1e-13));
  CHECK(erickson_constant(0.3) ==
        doctest::Approx(0.85839369133413978).epsilon(1e-12));
  for (int i = 1; i < 20; ++i) {
    const double a = i / 20.0;
    CHECK(std::abs(erickson_constant(a) * a * beta_integral(a) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(erickson_constant(0.0), std::domain_error);
  CHECK_THROWS_AS(erickson_constant(1.0), std::domain_error);
}

TEST_CASE("dl_age_cdf is the generalized arcsine law") {
  // alpha = 1/2 gives the classical arcsine law (2/pi) asin(sqrt(x)).
  CHECK(dl_age_cdf(0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(dl_age_cdf(0.5, 0.25) - 1.0 / 3.0) <= 1e-10);
  // Beta(1 - alpha, alpha) cdf at alpha = 0.3: I_0.6(0.7, 0.3), 30-digit ref.
  CHECK(std::abs(dl_age_cdf(0.3, 0.6) - 0.32643475604028736) <= 1e-10);
  CHECK(dl_age_cdf(0.7, 0.0) == 0.0);
  CHECK(dl_age_cdf(0.7, 1.0) == 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double v = dl_age_cdf(0.7, i / 200.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(dl_age_cdf(0.5, -0.1), std::domain_error);
  CHECK_THROWS_AS(dl_age_cdf(0.5, 1.1), std::domain_error);
  CHECK_THROWS_AS(dl_age_cdf(1.2, 0.5), std::domain_error);
}

TEST_CASE("dl_joint_density marginalizes to the arcsine density") {
  // int_0^inf g(u, v) dv = (sin(pi a)/pi) u^{-a} (1-u)^{a-1}, the
  // Beta(1-a, a) density.  Map v = r/(1-r) to integrate over (0,1).  The
  // v-tail decays like v^{-alpha}, so cut only where v^{-0.3} < 1e-80; the
  // sequential divisions keep underflowed densities at 0 instead of NaN.
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double u : {0.1, 0.5, 0.9}) {
      const double got = renewal::tanh_sinh_01(
          [&](double r, double omr) {
            if (omr < 1e-270) return 0.0;
            const double v = r / omr;
            return dl_joint_density(alpha, u, v) / omr / omr;
          },
          1e-12);
      const double want = std::sin(kPi * alpha) / kPi * std::pow(u, -alpha) *
                          std::pow(1.0 - u, alpha - 1.0);
      CHECK(got == doctest::Approx(want).epsilon(1e-8));
    }
  }
  CHECK(dl_joint_density(0.5, 0.5, 1.0) > 0.0);
  CHECK_THROWS_AS(dl_joint_density(0.5, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(dl_joint_density(0.5, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(dl_joint_density(0.5, 0.5, 0.0), std::domain_error);
}

TEST_CASE("ratio_cdf_from_dl reproduces the power law independently") {
  CHECK(std::abs(ratio_cdf_from_dl(0.5, 0.25) - 0.5) <= 1e-4);
  CHECK(std::abs(ratio_cdf_from_dl(0.7, 0.5) - 0.61557220667245814) <= 1e-4);
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (int i = 1; i < 10; ++i) {
      const double x = i / 10.0;
      CHECK(std::abs(ratio_cdf_from_dl(alpha, x) - ratio_limit_cdf(alpha, x)) <=
            1e-4);
    }
  }
  CHECK_THROWS_AS(ratio_cdf_from_dl(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(ratio_cdf_from_dl(0.5, 1.0), std::domain_error);
}

TEST_CASE("sizebiased_cycle_cdf matches closed forms") {
  const auto exp1 = InterArrivalLaw::exponential(1.0);
  // 1 - e^{-x}(1 + x) at x = 1: 1 - 2/e, 30-digit reference.
  CHECK(sizebiased_cycle_cdf(exp1, 1.0) ==
        doctest::Approx(0.26424111765711536).epsilon(1e-12));
  CHECK(sizebiased_cycle_cdf(exp1, 50.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Pareto(2, 1): E[X 1{X <= x}]/E[X] = 1 - 1/x for x >= 1.
  const auto par2 = InterArrivalLaw::pareto(2.0, 1.0);
  for (double x : {1.5, 2.0, 4.0, 10.0}) {
    CHECK(sizebiased_cycle_cdf(par2, x) ==
          doctest::Approx(1.0 - 1.0 / x).epsilon(1e-9));
  }
  CHECK(sizebiased_cycle_cdf(par2, 0.5) == 0.0);

  CHECK_THROWS_AS(sizebiased_cycle_cdf(exp1, 0.0), std::domain_error);
  CHECK_THROWS_AS(sizebiased_cycle_cdf(InterArrivalLaw::pareto(0.5, 1.0), 2.0),
                  std::domain_error);
  CHECK_THROWS_AS(sizebiased_cycle_cdf(InterArrivalLaw::pareto(1.0, 1.0), 2.0),
                  std::domain_error);
}

TEST_CASE("LimitLaw wraps the limit cdfs with names and supports") {
  const auto power = LimitLaw::ratio_power(0.5);
  CHECK(power.cdf(0.25) == ratio_limit_cdf(0.5, 0.25));
  CHECK(power.support_min() == 0.0);
  CHECK(power.support_max() == 1.0);
  CHECK_FALSE(power.name().empty());

  const auto unif = LimitLaw::uniform01();
  CHECK(unif.cdf(0.3) == 0.3);
  CHECK(unif.cdf(-1.0) == 0.0);
  CHECK(unif.cdf(2.0) == 1.0);

  const auto age = LimitLaw::dl_age(0.3);
  CHECK(age.cdf(0.6) == dl_age_cdf(0.3, 0.6));

  const auto exp1 = InterArrivalLaw::exponential(1.0);
  const auto cyc = LimitLaw::size_biased_cycle(exp1);
  CHECK(cyc.cdf(1.0) == doctest::Approx(0.26424111765711536).epsilon(1e-12));
  CHECK(std::isinf(cyc.support_max()));
  CHECK_THROWS_AS(LimitLaw::size_biased_cycle(InterArrivalLaw::pareto(0.5, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(LimitLaw::ratio_power(1.5), std::domain_error);

  // Every wrapped cdf is nondecreasing on its support.
  for (const auto& law : {power, unif, age}) {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double v = law.cdf(i / 100.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}
