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

#ifndef RENEWALKIT_PARALLEL_HPP_
#define RENEWALKIT_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace renewal {

/// Effective worker count: `requested` if positive, otherwise the hardware
/// concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for every i in [0, n) on up to `threads` workers.  Iterations
/// are claimed dynamically, so the partition of indices over workers is
/// arbitrary; callers keep results thread-count independent by making body(i)
/// a pure function of i that writes only slot i of preallocated output.  If
/// bodies throw, the exception with the smallest index is rethrown in the
/// calling thread after all workers have stopped.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace renewal

#endif  // RENEWALKIT_PARALLEL_HPP_
