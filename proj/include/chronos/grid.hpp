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

#ifndef CHRONOS_GRID_HPP
#define CHRONOS_GRID_HPP

#include <complex>
#include <cstddef>
#include <variant>

#include <Eigen/Dense>

namespace chronos {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Uniform periodic grid on [x_min, x_max). Node i sits at x_min + i*dx.
class SpatialGrid {
 public:
  /// Throws DomainError unless x_max > x_min and n_points is a power of two >= 8.
  SpatialGrid(double x_min, double x_max, std::size_t n_points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_); }
  double length() const noexcept { return x_max_ - x_min_; }

  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx(); }
  /// Angular wavenumber of FFT bin i (standard unshifted ordering).
  double k(std::size_t i) const noexcept;

  RVector positions() const;
  RVector wavenumbers() const;

  /// Index of the node closest to `x` (clamped to the grid).
  std::size_t nearest_index(double x) const noexcept;

  bool operator==(const SpatialGrid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

/// Abstract n-dimensional Hilbert space with the standard basis.
struct FiniteDim {
  std::size_t n;
  bool operator==(const FiniteDim&) const = default;
};

using Representation = std::variant<SpatialGrid, FiniteDim>;

std::size_t dimension(const Representation& rep) noexcept;
/// Measure attached to each amplitude: dx on a grid, 1 on a basis.
double measure(const Representation& rep) noexcept;
bool is_grid(const Representation& rep) noexcept;
/// Throws RepresentationError unless `rep` is a grid.
const SpatialGrid& grid_of(const Representation& rep);

}  // namespace chronos

#endif  // CHRONOS_GRID_HPP
