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

#ifndef RENEWALKIT_DIST_HPP_
#define RENEWALKIT_DIST_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace renewal {

class RngStream;

/// Inter-arrival time law of a renewal process.  Three continuous
/// (non-arithmetic) families:
///
///   pareto(alpha, xm)           survival (xm/t)^alpha for t >= xm, 1 below
///   paretolog(alpha, xm, beta)  survival (xm/t)^alpha (ln t/ln xm)^beta,
///                               a regularly varying tail with an explicit
///                               slowly varying log factor; requires xm > e
///                               and beta <= alpha*ln(xm) so the density
///                               stays nonnegative at xm
///   exp(rate)                   survival e^{-rate*t}
///
/// Pareto-family laws with alpha <= 1 have infinite mean (the null
/// recurrent regime); exp and alpha > 1 are the classical finite-mean
/// baselines.  Instances are immutable and freely shareable across threads.
class InterArrivalLaw {
 public:
  enum class Family { kPareto, kParetoLog, kExponential };

  static InterArrivalLaw pareto(double alpha, double xm);
  static InterArrivalLaw pareto_log(double alpha, double xm, double beta);
  static InterArrivalLaw exponential(double rate);

  /// Parses the canonical text forms "pareto(alpha,xm)",
  /// "paretolog(alpha,xm,beta)", "exp(rate)".  Throws std::invalid_argument
  /// on anything else.
  static InterArrivalLaw parse(std::string_view text);

  Family family() const { return family_; }

  /// Tail index alpha for the Pareto families, nullopt for exp (whose tail
  /// decays faster than any power).
  std::optional<double> tail_index() const;

  /// Left endpoint of the support (xm for the Pareto families, 0 for exp).
  double support_min() const;

  /// P(X > t) in closed form; survival(0) = 1, non-increasing,
  /// right-continuous.
  double survival(double t) const;

  /// Density -d/dt survival(t); 0 below the support.
  double density(double t) const;

  /// The t >= 0 with survival(t) = u, for u in (0, 1].  Exact inverse for
  /// pareto and exp; safeguarded Newton to relative 1e-12 for paretolog.
  /// Rejects u <= 0 (the preimage would be +infinity) and u > 1.
  double quantile_survival(double u) const;

  /// One inverse-transform draw, consuming one uniform from rng.
  double sample(RngStream& rng) const;

  /// E[X]; +infinity in the null recurrent regime (alpha <= 1).  Closed
  /// form except for paretolog with alpha > 1, which is integrated to
  /// relative 1e-10.
  double mean() const;

  bool has_finite_mean() const;

  /// Canonical text form, parse(to_string()) round-trips exactly.
  std::string to_string() const;

  friend bool operator==(const InterArrivalLaw&,
                         const InterArrivalLaw&) = default;

 private:
  InterArrivalLaw(Family family, double p0, double p1, double p2)
      : family_(family), p0_(p0), p1_(p1), p2_(p2) {}

  Family family_;
  double p0_;  // alpha or rate
  double p1_;  // xm
  double p2_;  // beta
};

}  // namespace renewal

#endif  // RENEWALKIT_DIST_HPP_
