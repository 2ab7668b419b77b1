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

#ifndef RENEWALKIT_STATS_HPP_
#define RENEWALKIT_STATS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace renewal {

/// Empirical distribution of a sample: F_hat(x) = (#values <= x)/n, the
/// right-continuous step CDF.  Immutable once built.
class Ecdf {
 public:
  /// Sorts a copy of the sample.  Throws std::invalid_argument on an empty
  /// sample or non-finite values.
  explicit Ecdf(std::vector<double> sample);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& sorted() const { return values_; }

  /// F_hat(x); ties share the step per the (#values <= x)/n convention.
  double operator()(double x) const;

 private:
  std::vector<double> values_;
};

/// Exact Kolmogorov-Smirnov sup-distance between an ECDF and a reference CDF
/// (monotone on the sample range):
///   D = max_i max(i/n - cdf(x_i), cdf(x_i) - (i-1)/n)  over the sorted x_i.
double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf);

/// Dvoretzky-Kiefer-Wolfowitz band half-width sqrt(ln(2/delta)/(2n)):
/// P(sup|F_hat - F| > eps) <= delta for a sample truly drawn from F.
double dkw_epsilon(std::size_t n, double delta);

}  // namespace renewal

#endif  // RENEWALKIT_STATS_HPP_
