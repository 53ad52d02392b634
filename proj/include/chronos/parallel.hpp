// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHRONOS_PARALLEL_HPP
#define CHRONOS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace chronos {

/// Worker count: CHRONOS_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls fn(i) for i in [0, n), split into contiguous blocks over at most
/// worker_count() threads. Each index is visited exactly once; callers write
/// results into preallocated slots so the outcome does not depend on
/// scheduling. The first exception thrown by any block is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace chronos

#endif  // CHRONOS_PARALLEL_HPP
