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

#ifndef CHRONOS_RANDOM_STREAM_HPP
#define CHRONOS_RANDOM_STREAM_HPP

#include <cstdint>
#include <limits>

namespace chronos {

/// Counter-based random stream.
///
/// Draw number c of stream (seed, id) is a pure function of the triple,
/// computed with the SplitMix64 finalizer. Substreams let parallel workers
/// reproduce the same numbers regardless of scheduling. Satisfies
/// std::uniform_random_bit_generator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;
  /// Uniform double in the open interval (0, 1).
  double uniform() noexcept;

  /// Independent stream keyed by this stream's seed lineage and `id`.
  RandomStream substream(std::uint64_t id) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace chronos

#endif  // CHRONOS_RANDOM_STREAM_HPP
