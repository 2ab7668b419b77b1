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

#ifndef RENEWALKIT_SOLVER_HPP_
#define RENEWALKIT_SOLVER_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "renewal/dist.hpp"

namespace renewal {

/// A function sampled on the uniform grid t_i = i*h, i = 0..n-1, so the
/// horizon is h*(n-1).
struct GridFunction {
  double h = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double t(std::size_t i) const { return static_cast<double>(i) * h; }
  double horizon() const { return t(values.empty() ? 0 : values.size() - 1); }

  /// Value at a grid time; `time` must sit on the grid to within h*1e-6.
  double at_time(double time) const;

  /// CSV serialization: a version header, a column header "t,value", then one
  /// row per grid point with the value at full double precision
  /// (17 significant digits).
  void write_csv(std::ostream& os) const;
};

/// The renewal-equation forcing for the ratio tail: b(t) = F_bar(t) -
/// F_bar(t/x), the probability that the first arrival lands in (t, t/x].
/// The solution of z = b + F*z is z(t) = P(A(t)/C(t) > x).  Rejects x
/// outside (0,1) — for x >= 1 the tail event is empty and the caller should
/// use 0 directly.
double b_function(const InterArrivalLaw& law, double x, double t);

/// Solves the renewal-type equation z(t) = f(t) + int_0^t z(t-s) F(ds) on
/// the grid [0, T] with step h by forward recursion.
///
/// Discretization (frozen; the residual operation evaluates exactly this
/// rule): with exact increments dF_j = F(j h) - F((j-1) h),
///   conv_i = sum_{j=1..i} dF_j * w_{i,j},
///   w_{i,j} = (z_{i-j} + z_{i-j+1})/2   for j < i   (trapezoid in z),
///   w_{i,i} = z_0                        (left endpoint on the last piece),
/// and z_i = forcing(t_i) + conv_i.  The j=1 trapezoid contains z_i, so each
/// step divides by (1 - dF_1/2); with forcing == 1 the output is the renewal
/// function u(t) = E[N(t)+1].  Discretization error is O(h).
///
/// Rejects h <= 0, T not (near-)divisible by h, more than 10^7 grid steps,
/// F(h) = 1 (step too coarse for the law), and non-finite forcing values.
GridFunction solve_renewal(const InterArrivalLaw& law,
                           const std::function<double(double)>& forcing, double T,
                           double h);

/// The key-renewal form a(t_i) = int_0^{t_i} f(t_i - s) u(ds): the atom
/// u(0) at s = 0 contributes u_0 * f(t_i), and each increment
/// du_j = u_j - u_{j-1} weights the trapezoid of f over its interval.
/// Given u_grid from solve_renewal(forcing == 1), this must agree with
/// solve_renewal(forcing = f) up to the O(h) discretization bound — the
/// two representations of the same solution are computed independently.
GridFunction key_renewal_compose(const GridFunction& u_grid,
                                 const std::function<double(double)>& forcing);

/// Overload taking the forcing pre-sampled on a grid; rejects a step or
/// length mismatch with u_grid.
GridFunction key_renewal_compose(const GridFunction& u_grid,
                                 const GridFunction& forcing);

/// Max-norm defect of z against the frozen discrete equation:
///   max_i |z_i - forcing(t_i) - conv_i(z)|.
/// For solve_renewal output this is ~1e-13 (pure floating-point noise); a
/// perturbed or foreign z scores its true defect.
double residual(const InterArrivalLaw& law,
                const std::function<double(double)>& forcing,
                const GridFunction& z);

}  // namespace renewal

#endif  // RENEWALKIT_SOLVER_HPP_
