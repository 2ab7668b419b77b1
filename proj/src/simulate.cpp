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

#include "renewal/simulate.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "renewal/parallel.hpp"
#include "renewal/rng.hpp"

namespace renewal {
namespace {

void validate_plan(const ReplicationPlan& plan) {
  if (!(plan.t > 0.0) || !std::isfinite(plan.t)) {
    throw std::domain_error("ReplicationPlan: t must be positive and finite");
  }
  if (plan.n < 1) throw std::domain_error("ReplicationPlan: n must be >= 1");
}

}  // namespace

Snapshot snapshot(const InterArrivalLaw& law, double t, RngStream& rng) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::domain_error("snapshot: t must be positive and finite");
  }
  double sum = 0.0;
  std::uint64_t count = 0;
  for (;;) {
    const double x = law.sample(rng);
    const double next = sum + x;
    if (next > t) {
      Snapshot s;
      s.t = t;
      s.age = t - sum;
      s.residual = next - t;
      s.cycle = s.age + s.residual;
      s.count = count;
      return s;
    }
    sum = next;
    ++count;
  }
}

double ratio(const Snapshot& s) { return s.age / s.cycle; }

std::vector<Snapshot> run_snapshots(const ReplicationPlan& plan, unsigned threads) {
  validate_plan(plan);
  std::vector<Snapshot> out(plan.n);
  parallel_for(plan.n, threads, [&](std::size_t i) {
    RngStream rng(plan.master_seed, i);
    out[i] = snapshot(plan.law, plan.t, rng);
  });
  return out;
}

std::vector<double> run_ratio_experiment(const ReplicationPlan& plan,
                                         unsigned threads) {
  validate_plan(plan);
  std::vector<double> out(plan.n);
  parallel_for(plan.n, threads, [&](std::size_t i) {
    RngStream rng(plan.master_seed, i);
    out[i] = ratio(snapshot(plan.law, plan.t, rng));
  });
  return out;
}

RenewalFnEstimate renewal_function_mc(const InterArrivalLaw& law,
                                      const std::vector<double>& t_grid,
                                      std::size_t n, std::uint64_t master_seed,
                                      unsigned threads) {
  if (t_grid.empty()) throw std::domain_error("renewal_function_mc: empty t grid");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || !std::isfinite(t_grid[k]) ||
        (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw std::domain_error(
          "renewal_function_mc: t grid must be positive, finite, increasing");
    }
  }
  if (n < 2) throw std::domain_error("renewal_function_mc: n must be >= 2");

  const std::size_t g = t_grid.size();
  const double t_max = t_grid.back();

  // Counts are integers, and integer sums are exact and order-independent,
  // so a mutex-guarded reduction stays bitwise deterministic no matter how
  // replications land on workers.  The per-point square sums back the
  // standard-error estimate; 128-bit headroom keeps them exact.
  std::vector<std::uint64_t> sum(g, 0);
  std::vector<unsigned __int128> sum_sq(g, 0);
  std::mutex reduce_mutex;

  parallel_for(n, threads, [&](std::size_t i) {
    RngStream rng(master_seed, i);
    std::vector<std::uint64_t> counts(g);
    double s = 0.0;
    std::uint64_t n_renewals = 0;
    std::size_t k = 0;
    for (;;) {
      const double next = s + law.sample(rng);
      // For every grid point in [S_m, S_{m+1}) the count is m.
      while (k < g && t_grid[k] < next) counts[k++] = n_renewals;
      if (k == g) break;
      s = next;
      ++n_renewals;
      if (!(s <= t_max)) {  // ties are measure zero; guard NaN poisoning
        throw std::logic_error("renewal_function_mc: path bookkeeping failed");
      }
    }
    std::lock_guard<std::mutex> lock(reduce_mutex);
    for (std::size_t j = 0; j < g; ++j) {
      sum[j] += counts[j];
      sum_sq[j] += static_cast<unsigned __int128>(counts[j]) * counts[j];
    }
  });

  RenewalFnEstimate est;
  est.t = t_grid;
  est.u_hat.resize(g);
  est.se.resize(g);
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j < g; ++j) {
    est.u_hat[j] = static_cast<double>(sum[j]) / dn + 1.0;
    // Var(count+1) = Var(count); numerator n*sum_sq - sum^2 is exact in
    // 128-bit integers before the one rounding conversion to double.
    const unsigned __int128 num = static_cast<unsigned __int128>(n) * sum_sq[j] -
                                  static_cast<unsigned __int128>(sum[j]) * sum[j];
    const double var = static_cast<double>(num) / (dn * (dn - 1.0));
    est.se[j] = std::sqrt(var / dn);
  }
  return est;
}

}  // namespace renewal
