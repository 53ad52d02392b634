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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "chronos/errors.hpp"

namespace chronos::detail {

namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Fft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

Fft::Fft(std::size_t n) : n_(n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const Plans>> cache;

  std::lock_guard cache_lock(cache_mutex);
  if (auto it = cache.find(n); it != cache.end()) {
    plans_ = it->second;
    return;
  }
  auto plans = std::make_shared<Plans>();
  {
    std::lock_guard lock(planner_mutex());
    CVector scratch(static_cast<Eigen::Index>(n));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->forward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, flags);
    plans->backward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, flags);
  }
  if (!plans->forward || !plans->backward) throw NumericalError("FFTW failed to create a plan");
  cache.emplace(n, plans);
  plans_ = std::move(plans);
}

void Fft::forward(CVector& data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->forward, buf, buf);
}

void Fft::inverse(CVector& data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->backward, buf, buf);
  data /= static_cast<double>(n_);
}

}  // namespace chronos::detail
