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

#include "chronos/random_stream.hpp"

namespace chronos {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id), key_(mix(mix(seed + kGolden) ^ (stream_id * kGolden + 1))) {}

RandomStream::result_type RandomStream::operator()() noexcept {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

double RandomStream::uniform() noexcept {
  // 53 random mantissa bits, offset by half an ulp so 0 and 1 never occur.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

RandomStream RandomStream::substream(std::uint64_t id) const noexcept {
  return RandomStream(mix(key_ ^ kGolden), id);
}

}  // namespace chronos
