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

#ifndef RENEWALKIT_LIMITS_HPP_
#define RENEWALKIT_LIMITS_HPP_

#include <optional>
#include <string>

#include "renewal/dist.hpp"

namespace renewal {

/// CDF of the limiting age/cycle ratio in the infinite-mean regime
/// (tail index alpha in (0,1)): clamp(x,0,1)^alpha, the law of U^{1/alpha}.
double ratio_limit_cdf(double alpha, double x);

/// int_0^1 (1-r)^{-alpha} r^{alpha-1} dr by endpoint-aware quadrature;
/// equals the Beta(alpha, 1-alpha) value pi/sin(pi*alpha) analytically.
/// Rejects alpha outside (0,1), where the integral diverges.
double beta_integral(double alpha);

/// The constant c* in the renewal-function asymptotic u(t) ~ c*/survival(t)
/// for tail index alpha in (0,1).  Defined through the normalization
/// c* * alpha * beta_integral(alpha) = 1, i.e. c* = sin(pi*alpha)/(pi*alpha);
/// cross-checked against Monte Carlo estimates of u at large t.
double erickson_constant(double alpha);

/// CDF of the limiting scaled age A(t)/t: the generalized arcsine
/// (Beta(1-alpha, alpha)) law, evaluated as a regularized incomplete beta to
/// absolute 1e-10.  Rejects x outside [0,1].
double dl_age_cdf(double alpha, double x);

/// The joint limit density of (A(t)/t, B(t)/t) on (0,1) x (0,inf):
///   g(u,v) = (alpha sin(pi alpha)/pi) (1-u)^{alpha-1} (u+v)^{-alpha-1}.
/// Integrating out v reproduces the dl_age_cdf density (tested, not assumed).
double dl_joint_density(double alpha, double u, double v);

/// P(A/(A+B) <= x) under dl_joint_density, by iterated 2-D quadrature over
/// the region v >= u(1-x)/x, to well under absolute 1e-6.  Independently
/// reproduces ratio_limit_cdf — the two limits are derived through different
/// routes and their agreement is a cross-check, so this is NOT implemented
/// as x^alpha.  Rejects x outside the open interval (0,1).
double ratio_cdf_from_dl(double alpha, double x);

/// CDF of the size-biased inter-arrival law P(C <= x) = E[X 1{X <= x}]/E[X],
/// the limiting cycle length in the finite-mean regime.  Closed form for
/// Exponential (1 - e^{-rate x}(1 + rate x)); quadrature to relative 1e-10
/// otherwise.  Rejects infinite-mean laws.
double sizebiased_cycle_cdf(const InterArrivalLaw& law, double x);

/// A named limit CDF with its support, for goodness-of-fit comparisons and
/// artifact labeling.
class LimitLaw {
 public:
  /// x^alpha on [0,1] — the infinite-mean ratio limit.
  static LimitLaw ratio_power(double alpha);
  /// x on [0,1] — the finite-mean ratio limit.
  static LimitLaw uniform01();
  /// Generalized arcsine on [0,1] — the infinite-mean age limit.
  static LimitLaw dl_age(double alpha);
  /// Size-biased base law on [support_min, inf) — the finite-mean cycle limit.
  static LimitLaw size_biased_cycle(const InterArrivalLaw& base);

  double cdf(double x) const;
  double support_min() const;
  double support_max() const;  // +inf for the size-biased law
  std::string name() const;

 private:
  enum class Kind { kRatioPower, kUniform01, kDlAge, kSizeBiased };
  LimitLaw(Kind kind, double alpha, std::optional<InterArrivalLaw> base)
      : kind_(kind), alpha_(alpha), base_(std::move(base)) {}

  Kind kind_;
  double alpha_;
  std::optional<InterArrivalLaw> base_;
};

}  // namespace renewal

#endif  // RENEWALKIT_LIMITS_HPP_
