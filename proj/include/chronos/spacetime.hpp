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

#ifndef CHRONOS_SPACETIME_HPP
#define CHRONOS_SPACETIME_HPP

#include <array>
#include <cstdint>
#include <filesystem>

#include "chronos/collapse_distribution.hpp"
#include "chronos/propagator.hpp"

namespace chronos {

inline constexpr double kDefaultConditionalFloor = 1e-300;

/// Joint density p(x_i, t_k) = f(t_k) |psi(x_i, t_k)|^2 on the space-time grid,
/// with its marginals and Bayesian conditionals.
///
/// Rows are time nodes (only those inside the collapse support), columns are
/// grid nodes. Time integrals use the composite Simpson weights of the
/// trajectory grid; space integrals use dx.
class JointDensity {
 public:
  JointDensity(SpatialGrid grid, RVector times, RVector time_weights, RVector density,
               RMatrix position_density, double floor);

  const SpatialGrid& grid() const noexcept { return grid_; }
  const RVector& times() const noexcept { return times_; }
  const RVector& time_weights() const noexcept { return weights_; }
  double dx() const noexcept { return grid_.dx(); }
  double dt() const noexcept;
  double floor() const noexcept { return floor_; }
  std::size_t n_times() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  std::size_t n_points() const noexcept { return static_cast<std::size_t>(p_.cols()); }

  /// p[k][i]
  const RMatrix& p() const noexcept { return p_; }
  /// |psi(x_i | t_k)|^2
  const RMatrix& position_density() const noexcept { return psi_sq_; }
  /// P(t_k) = f(t_k)
  const RVector& collapse_density() const noexcept { return f_; }
  /// g(x_i) = sum_k w_k p[k][i]
  const RVector& spatial_marginal() const noexcept { return g_; }

  /// sum_i p[k][i] dx for every k.
  RVector time_marginal() const;
  /// sum_k w_k sum_i p[k][i] dx.
  double total_mass() const;

  /// |phi(t_k | x_i)|^2 = p[k][i] / g(x_i). Throws UndefinedConditionalError
  /// when g(x_i) is at or below the floor.
  RVector conditional_time_density(std::size_t point) const;

 private:
  SpatialGrid grid_;
  RVector times_;
  RVector weights_;
  RVector f_;
  RMatrix psi_sq_;
  RMatrix p_;
  RVector g_;
  double floor_;
};

/// Throws RepresentationError for a basis trajectory, VariantError for a
/// delta distribution (see delta_spatial_density) and CoverageError when the
/// support is not covered.
JointDensity joint_density(const Trajectory& traj, const CollapseDistribution& dist,
                           double floor = kDefaultConditionalFloor);

/// g(x) for a delta distribution: |psi(x, t')|^2, interpolated linearly in t
/// between the bracketing slices.
RVector delta_spatial_density(const Trajectory& traj, const CollapseDistribution& dist);

RVector spatial_marginal(const JointDensity& joint);

/// Conditional time density at the grid node nearest to `x`.
RVector conditional_time_density(const JointDensity& joint, double x);

struct BayesReport {
  double max_residual_position_side;  ///< max |psi^2(x|t) f(t) - p|
  double max_residual_time_side;      ///< max |phi^2(t|x) g(x) - p|
  std::size_t checked_points;
  std::size_t skipped_points;  ///< columns with g at or below the floor

  double max_residual() const {
    return std::max(max_residual_position_side, max_residual_time_side);
  }
};

BayesReport bayes_consistency(const JointDensity& joint);

/// Columns x,t,p; ".gz" paths are compressed.
void write_joint_csv(const JointDensity& joint, const std::filesystem::path& path);

/// 32-byte header followed by n_times * n_points little-endian doubles, time-major.
struct PxtHeader {
  std::array<char, 4> magic{'P', 'X', 'T', '1'};
  std::uint32_t n_times = 0;
  std::uint32_t n_points = 0;
  std::uint32_t reserved = 0;
  double dx = 0.0;
  double dt = 0.0;
};
static_assert(sizeof(PxtHeader) == 32);

void write_joint_binary(const JointDensity& joint, const std::filesystem::path& path);
/// Reads a PXT1 block; returns the header and the row-major values.
std::pair<PxtHeader, RMatrix> read_joint_binary(const std::filesystem::path& path);

}  // namespace chronos

#endif  // CHRONOS_SPACETIME_HPP
