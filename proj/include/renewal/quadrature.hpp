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

#ifndef RENEWALKIT_QUADRATURE_HPP_
#define RENEWALKIT_QUADRATURE_HPP_

#include <functional>

namespace renewal {

/// Integrate f over the open unit interval with tanh-sinh (double
/// exponential) quadrature, refining the level until the relative change
/// drops below rel_tol.
///
/// The integrand receives both r and 1-r; the second argument is computed
/// directly from the transform, so it stays accurate down to ~1e-300 where
/// the naive 1.0 - r would have cancelled. Integrable endpoint
/// singularities such as r^{a-1}(1-r)^{b-1} with a,b > 0 are handled
/// without any special casing.
double tanh_sinh_01(const std::function<double(double r, double one_minus_r)>& f,
                    double rel_tol = 1e-13);

/// Integrate f over [a, b] (finite, a < b) by the affine map onto (0,1).
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued-fraction evaluation (Lentz), accurate to ~1e-14.
double reg_incomplete_beta(double a, double b, double x);

}  // namespace renewal

#endif  // RENEWALKIT_QUADRATURE_HPP_
