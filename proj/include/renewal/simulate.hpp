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

#ifndef RENEWALKIT_SIMULATE_HPP_
#define RENEWALKIT_SIMULATE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "renewal/dist.hpp"

namespace renewal {

class RngStream;

/// State of one renewal path, inspected at time t.  With partial sums
/// S_0 = 0, S_n = X_1 + ... + X_n and N(t) = max{n >= 0 : S_n <= t}:
///   age      = t - S_{N(t)}        (elapsed time in the current cycle)
///   residual = S_{N(t)+1} - t      (time to the next renewal, > 0)
///   cycle    = age + residual      (length of the straddling interval)
///   count    = N(t)
struct Snapshot {
  double t = 0.0;
  double age = 0.0;
  double residual = 0.0;
  double cycle = 0.0;
  std::uint64_t count = 0;
};

/// Simulates one path: draws X_1, X_2, ... from `rng` until the running sum
/// first exceeds t, and returns the straddling cycle's snapshot.  A tie
/// S_n = t (probability zero for these continuous laws) counts the renewal,
/// matching the "S_n <= t" convention in N(t).
Snapshot snapshot(const InterArrivalLaw& law, double t, RngStream& rng);

/// age/cycle, the ratio V(t); always in [0, 1) since residual > 0.
double ratio(const Snapshot& s);

/// A seeded, replicable Monte Carlo experiment: n independent snapshots of
/// `law` at time t.  Replication i draws from the substream derived from
/// (master_seed, i), so results are bitwise identical for any worker count.
struct ReplicationPlan {
  InterArrivalLaw law;
  double t = 0.0;
  std::size_t n = 0;
  std::uint64_t master_seed = 0;
};

/// All n snapshots, in replication order.
std::vector<Snapshot> run_snapshots(const ReplicationPlan& plan, unsigned threads = 1);

/// Just the n age/cycle ratios, in replication order.
std::vector<double> run_ratio_experiment(const ReplicationPlan& plan,
                                         unsigned threads = 1);

/// Monte Carlo estimate of the renewal function u(t) = E[N(t) + 1] on a grid.
struct RenewalFnEstimate {
  std::vector<double> t;      // the input grid
  std::vector<double> u_hat;  // mean of count+1 over replications
  std::vector<double> se;     // sample standard error of u_hat
};

/// Estimates u on `t_grid` (strictly increasing, positive) from n paths; one
/// path serves every grid point.  Counts are accumulated as integers, so the
/// estimate is exact in the counts and independent of accumulation order —
/// the same determinism guarantee as run_snapshots.
RenewalFnEstimate renewal_function_mc(const InterArrivalLaw& law,
                                      const std::vector<double>& t_grid,
                                      std::size_t n, std::uint64_t master_seed,
                                      unsigned threads = 1);

}  // namespace renewal

#endif  // RENEWALKIT_SIMULATE_HPP_
