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

#ifndef RENEWALKIT_RNG_HPP_
#define RENEWALKIT_RNG_HPP_

#include <array>
#include <cstdint>

namespace renewal {

// splitmix64 finalizer (Vigna / Steele-Lea-Flood).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256** stream with counter-based substream derivation.
///
/// RngStream(master, k) seeds from the k-th splitmix64 output of `master`,
/// so substreams are a pure function of (master, k): replication k draws the
/// same variates no matter which worker runs it, which is what makes the
/// Monte Carlo layer reproducible under any parallel schedule.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept {
    // Expand the seed into the 256-bit state with splitmix64.
    std::uint64_t s = seed;
    for (auto& word : state_) {
      word = mix64(s);
      s += 0x9E3779B97F4A7C15ULL;
    }
    state_[0] |= 1;  // xoshiro must not start at the all-zero state
  }

  RngStream(std::uint64_t master_seed, std::uint64_t stream) noexcept
      : RngStream(mix64(master_seed + 0x9E3779B97F4A7C15ULL * stream)) {}

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw on the open interval (0,1); never 0 or 1, so inverse
  /// survival transforms stay finite.
  double next_open01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace renewal

#endif  // RENEWALKIT_RNG_HPP_
