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

#ifndef CHRONOS_SRC_FFT_HPP
#define CHRONOS_SRC_FFT_HPP

#include <cstddef>
#include <memory>

#include "chronos/grid.hpp"

namespace chronos::detail {

/// In-place 1D complex FFT of fixed length backed by FFTW.
///
/// Plans are created once per length and shared; execution is thread-safe.
/// `inverse` includes the 1/n factor so inverse(forward(v)) == v.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void forward(CVector& data) const;
  void inverse(CVector& data) const;

 private:
  struct Plans;
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace chronos::detail

#endif  // CHRONOS_SRC_FFT_HPP
