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

#include "chronos/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "chronos/errors.hpp"

namespace chronos {

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw DomainError("spatial grid requires finite bounds with x_max > x_min");
  }
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw DomainError("spatial grid size must be a power of two >= 8, got " +
                      std::to_string(n_points));
  }
}

double SpatialGrid::k(std::size_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  auto m = static_cast<std::ptrdiff_t>(i);
  if (m >= n / 2) m -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(m) / length();
}

RVector SpatialGrid::positions() const {
  RVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = x(i);
  return out;
}

RVector SpatialGrid::wavenumbers() const {
  RVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = k(i);
  return out;
}

std::size_t SpatialGrid::nearest_index(double x) const noexcept {
  const double s = std::round((x - x_min_) / dx());
  if (!(s > 0.0)) return 0;
  if (s >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(s);
}

std::size_t dimension(const Representation& rep) noexcept {
  return std::visit(
      [](const auto& r) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, SpatialGrid>) {
          return r.size();
        } else {
          return r.n;
        }
      },
      rep);
}

double measure(const Representation& rep) noexcept {
  if (const auto* g = std::get_if<SpatialGrid>(&rep)) return g->dx();
  return 1.0;
}

bool is_grid(const Representation& rep) noexcept {
  return std::holds_alternative<SpatialGrid>(rep);
}

const SpatialGrid& grid_of(const Representation& rep) {
  if (const auto* g = std::get_if<SpatialGrid>(&rep)) return *g;
  throw RepresentationError("operation requires a spatial-grid representation");
}

}  // namespace chronos
