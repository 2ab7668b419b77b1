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

#include "renewal/dist.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "renewal/quadrature.hpp"
#include "renewal/rng.hpp"

namespace renewal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

// Shortest decimal form that round-trips through parse().
std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view token, std::string_view whole) {
  token = trim(token);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("bad numeric argument in law \"" + std::string(whole) +
                                "\"");
  }
  return value;
}

}  // namespace

InterArrivalLaw InterArrivalLaw::pareto(double alpha, double xm) {
  require(std::isfinite(alpha) && alpha > 0, "pareto: alpha must be in (0, inf)");
  require(std::isfinite(xm) && xm > 0, "pareto: xm must be positive");
  return InterArrivalLaw(Family::kPareto, alpha, xm, 0.0);
}

InterArrivalLaw InterArrivalLaw::pareto_log(double alpha, double xm, double beta) {
  require(std::isfinite(alpha) && alpha > 0, "paretolog: alpha must be in (0, inf)");
  require(std::isfinite(xm) && xm > std::exp(1.0), "paretolog: xm must exceed e");
  // d/dt [-ln survival] = (alpha - beta/ln t)/t must be >= 0 at t = xm, or the
  // density goes negative just above the support edge and survival exceeds 1.
  require(std::isfinite(beta) && beta <= alpha * std::log(xm),
          "paretolog: beta must not exceed alpha*ln(xm)");
  return InterArrivalLaw(Family::kParetoLog, alpha, xm, beta);
}

InterArrivalLaw InterArrivalLaw::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0, "exp: rate must be positive");
  return InterArrivalLaw(Family::kExponential, rate, 0.0, 0.0);
}

InterArrivalLaw InterArrivalLaw::parse(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw std::invalid_argument("law must look like name(args): \"" +
                                std::string(whole) + "\"");
  }
  const std::string_view name = trim(text.substr(0, open));
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);

  std::vector<double> args;
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    const auto piece =
        body.substr(start, comma == std::string_view::npos ? comma : comma - start);
    args.push_back(parse_double(piece, whole));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }

  const auto expect = [&](std::size_t n) {
    if (args.size() != n) {
      throw std::invalid_argument("wrong argument count for law \"" +
                                  std::string(whole) + "\"");
    }
  };
  if (name == "pareto") {
    expect(2);
    return pareto(args[0], args[1]);
  }
  if (name == "paretolog") {
    expect(3);
    return pareto_log(args[0], args[1], args[2]);
  }
  if (name == "exp") {
    expect(1);
    return exponential(args[0]);
  }
  throw std::invalid_argument("unknown law family in \"" + std::string(whole) + "\"");
}

std::optional<double> InterArrivalLaw::tail_index() const {
  if (family_ == Family::kExponential) return std::nullopt;
  return p0_;
}

double InterArrivalLaw::support_min() const {
  return family_ == Family::kExponential ? 0.0 : p1_;
}

double InterArrivalLaw::survival(double t) const {
  if (!(t >= 0)) throw std::domain_error("survival: t must be >= 0");
  switch (family_) {
    case Family::kPareto:
      return t <= p1_ ? 1.0 : std::pow(p1_ / t, p0_);
    case Family::kParetoLog: {
      if (t <= p1_) return 1.0;
      // exp(-alpha ln(t/xm) + beta ln(ln t/ln xm)), evaluated in log space so
      // huge t cannot overflow the power.
      const double y = std::log(t / p1_);
      const double lxm = std::log(p1_);
      return std::exp(-p0_ * y + p2_ * std::log1p(y / lxm));
    }
    case Family::kExponential:
      return std::exp(-p0_ * t);
  }
  throw std::logic_error("unreachable");
}

double InterArrivalLaw::density(double t) const {
  if (!(t >= 0)) throw std::domain_error("density: t must be >= 0");
  switch (family_) {
    case Family::kPareto:
      return t < p1_ ? 0.0 : p0_ / t * std::pow(p1_ / t, p0_);
    case Family::kParetoLog: {
      if (t < p1_) return 0.0;
      // -S'(t) = S(t) * (alpha - beta/ln t)/t.
      return survival(t) * (p0_ - p2_ / std::log(t)) / t;
    }
    case Family::kExponential:
      return p0_ * std::exp(-p0_ * t);
  }
  throw std::logic_error("unreachable");
}

double InterArrivalLaw::quantile_survival(double u) const {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("quantile_survival: u must lie in (0, 1]");
  }
  switch (family_) {
    case Family::kPareto:
      return p1_ * std::pow(u, -1.0 / p0_);
    case Family::kExponential:
      return -std::log(u) / p0_;
    case Family::kParetoLog:
      break;
  }

  // Solve g(y) = alpha*y - beta*log1p(y/ln xm) = -ln u for y = ln(t/xm) >= 0.
  // g is increasing on [0, inf) (the construction-time beta bound is exactly
  // g'(0) >= 0), so bisection is safe; Newton accelerates it.
  const double alpha = p0_, beta = p2_, lxm = std::log(p1_);
  const double target = -std::log(u);
  if (target == 0.0) return p1_;
  const auto g = [&](double y) { return alpha * y - beta * std::log1p(y / lxm); };
  const auto dg = [&](double y) { return alpha - beta / (lxm + y); };

  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * target / alpha);
  while (g(hi) < target) hi *= 2.0;

  double y = std::min(hi, target / alpha + std::max(0.0, beta) / alpha);
  for (int iter = 0; iter < 200; ++iter) {
    const double gy = g(y);
    (gy < target ? lo : hi) = y;
    const double slope = dg(y);
    double next = slope > 0 ? y - (gy - target) / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - y);
    y = next;
    if (step <= 1e-14 * (1.0 + y)) break;
  }
  return p1_ * std::exp(y);
}

double InterArrivalLaw::sample(RngStream& rng) const {
  return quantile_survival(rng.next_open01());
}

double InterArrivalLaw::mean() const {
  switch (family_) {
    case Family::kExponential:
      return 1.0 / p0_;
    case Family::kPareto:
      return p0_ > 1.0 ? p0_ * p1_ / (p0_ - 1.0) : kInf;
    case Family::kParetoLog:
      break;
  }
  const double alpha = p0_, xm = p1_, beta = p2_;
  if (alpha <= 1.0) return kInf;
  // E[X] = xm + int_xm^inf S(t) dt.  Substituting t = xm e^y and then
  // s = e^{-(alpha-1)y} maps the tail integral onto (0,1):
  //   int = xm/(alpha-1) * int_0^1 (1 - ln s / ((alpha-1) ln xm))^beta ds,
  // whose integrand has only a logarithmic endpoint singularity at s = 0.
  const double lxm = std::log(xm);
  const double scale = 1.0 / ((alpha - 1.0) * lxm);
  const double integral = tanh_sinh_01(
      [&](double s, double) { return std::pow(1.0 - std::log(s) * scale, beta); },
      1e-11);
  return xm + xm / (alpha - 1.0) * integral;
}

bool InterArrivalLaw::has_finite_mean() const {
  return family_ == Family::kExponential || p0_ > 1.0;
}

std::string InterArrivalLaw::to_string() const {
  switch (family_) {
    case Family::kPareto:
      return "pareto(" + format_double(p0_) + "," + format_double(p1_) + ")";
    case Family::kParetoLog:
      return "paretolog(" + format_double(p0_) + "," + format_double(p1_) + "," +
             format_double(p2_) + ")";
    case Family::kExponential:
      return "exp(" + format_double(p0_) + ")";
  }
  throw std::logic_error("unreachable");
}

}  // namespace renewal
