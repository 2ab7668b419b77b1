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

#include "renewal/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "renewal/quadrature.hpp"

namespace renewal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha01(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1)");
  }
}

}  // namespace

double ratio_limit_cdf(double alpha, double x) {
  require_alpha01(alpha, "ratio_limit_cdf");
  return std::pow(std::clamp(x, 0.0, 1.0), alpha);
}

double beta_integral(double alpha) {
  require_alpha01(alpha, "beta_integral");
  return tanh_sinh_01(
      [alpha](double r, double one_minus_r) {
        return std::pow(one_minus_r, -alpha) * std::pow(r, alpha - 1.0);
      },
      1e-14);
}

double erickson_constant(double alpha) {
  require_alpha01(alpha, "erickson_constant");
  return 1.0 / (alpha * beta_integral(alpha));
}

double dl_age_cdf(double alpha, double x) {
  require_alpha01(alpha, "dl_age_cdf");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("dl_age_cdf: x must lie in [0, 1]");
  }
  return reg_incomplete_beta(1.0 - alpha, alpha, x);
}

double dl_joint_density(double alpha, double u, double v) {
  require_alpha01(alpha, "dl_joint_density");
  if (!(u > 0.0 && u < 1.0) || !(v > 0.0)) {
    throw std::domain_error("dl_joint_density: need u in (0,1), v > 0");
  }
  return alpha * std::sin(M_PI * alpha) / M_PI * std::pow(1.0 - u, alpha - 1.0) *
         std::pow(u + v, -alpha - 1.0);
}

double ratio_cdf_from_dl(double alpha, double x) {
  require_alpha01(alpha, "ratio_cdf_from_dl");
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("ratio_cdf_from_dl: x must lie in (0, 1)");
  }
  // P(A/(A+B) <= x) = int_0^1 du int_{v0(u)}^inf g(u,v) dv, v0 = u(1-x)/x.
  // The inner integral is mapped onto (0,1) by v = v0 + xi/(1-xi) and
  // evaluated relative to its left-endpoint scale w^{-alpha-1}, w = u + v0
  // = u/x, so nothing overflows when the outer node u sits deep in the
  // endpoint singularity.  Logs combine the pieces for the same reason.
  const double log_k = std::log(alpha * std::sin(M_PI * alpha) / M_PI);
  const auto outer = [&](double u, double one_minus_u) {
    const double w = u / x;
    const double scaled_inner = tanh_sinh_01(
        [&](double xi, double one_minus_xi) {
          const double shift = xi / (one_minus_xi * w);  // may overflow; ok
          return std::exp(-(alpha + 1.0) * std::log1p(shift) -
                          2.0 * std::log(one_minus_xi));
        },
        1e-12);
    if (scaled_inner <= 0.0) return 0.0;  // underflow at u ~ 1e-308; negligible
    return std::exp(log_k + (alpha - 1.0) * std::log(one_minus_u) -
                    (alpha + 1.0) * std::log(w) + std::log(scaled_inner));
  };
  return std::clamp(tanh_sinh_01(outer, 1e-10), 0.0, 1.0);
}

double sizebiased_cycle_cdf(const InterArrivalLaw& law, double x) {
  if (!law.has_finite_mean()) {
    throw std::domain_error(
        "sizebiased_cycle_cdf: infinite-mean regime, size-biased law undefined");
  }
  if (!(x > 0.0)) throw std::domain_error("sizebiased_cycle_cdf: x must be positive");
  if (x == kInf) return 1.0;
  if (law.family() == InterArrivalLaw::Family::kExponential) {
    // 1 - e^{-rate x}(1 + rate x), written to stay accurate for small x.
    const double lx = x / law.mean();
    return -std::expm1(-lx) - std::exp(-lx) * lx;
  }
  const double lo = law.support_min();
  if (x <= lo) return 0.0;
  const double integral =
      tanh_sinh([&](double s) { return s * law.density(s); }, lo, x, 1e-11);
  return std::clamp(integral / law.mean(), 0.0, 1.0);
}

LimitLaw LimitLaw::ratio_power(double alpha) {
  require_alpha01(alpha, "LimitLaw::ratio_power");
  return LimitLaw(Kind::kRatioPower, alpha, std::nullopt);
}

LimitLaw LimitLaw::uniform01() { return LimitLaw(Kind::kUniform01, 0.0, std::nullopt); }

LimitLaw LimitLaw::dl_age(double alpha) {
  require_alpha01(alpha, "LimitLaw::dl_age");
  return LimitLaw(Kind::kDlAge, alpha, std::nullopt);
}

LimitLaw LimitLaw::size_biased_cycle(const InterArrivalLaw& base) {
  if (!base.has_finite_mean()) {
    throw std::domain_error("LimitLaw::size_biased_cycle: base law must have finite mean");
  }
  return LimitLaw(Kind::kSizeBiased, 0.0, base);
}

double LimitLaw::cdf(double x) const {
  switch (kind_) {
    case Kind::kRatioPower:
      return ratio_limit_cdf(alpha_, x);
    case Kind::kUniform01:
      return std::clamp(x, 0.0, 1.0);
    case Kind::kDlAge:
      return dl_age_cdf(alpha_, std::clamp(x, 0.0, 1.0));
    case Kind::kSizeBiased:
      return x <= base_->support_min() ? 0.0 : sizebiased_cycle_cdf(*base_, x);
  }
  throw std::logic_error("unreachable");
}

double LimitLaw::support_min() const {
  return kind_ == Kind::kSizeBiased ? base_->support_min() : 0.0;
}

double LimitLaw::support_max() const {
  return kind_ == Kind::kSizeBiased ? kInf : 1.0;
}

std::string LimitLaw::name() const {
  switch (kind_) {
    case Kind::kRatioPower:
      return "ratio-power(alpha=" + std::to_string(alpha_) + ")";
    case Kind::kUniform01:
      return "uniform01";
    case Kind::kDlAge:
      return "dl-age(alpha=" + std::to_string(alpha_) + ")";
    case Kind::kSizeBiased:
      return "size-biased(" + base_->to_string() + ")";
  }
  throw std::logic_error("unreachable");
}

}  // namespace renewal
