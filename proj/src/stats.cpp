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

#include "renewal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace renewal {

Ecdf::Ecdf(std::vector<double> sample) : values_(std::move(sample)) {
  if (values_.empty()) throw std::invalid_argument("Ecdf: empty sample");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Ecdf: non-finite sample value");
  }
  std::sort(values_.begin(), values_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf) {
  const auto& xs = e.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    if (!std::isfinite(f)) throw std::invalid_argument("ks_distance: cdf returned non-finite value");
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

double dkw_epsilon(std::size_t n, double delta) {
  if (n < 1) throw std::invalid_argument("dkw_epsilon: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("dkw_epsilon: delta must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace renewal
