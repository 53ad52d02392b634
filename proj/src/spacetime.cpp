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

#include "chronos/spacetime.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <utility>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/parallel.hpp"
#include "chronos/smear.hpp"

namespace chronos {

static_assert(std::endian::native == std::endian::little, "PXT1 I/O assumes a little-endian host");

JointDensity::JointDensity(SpatialGrid grid, RVector times, RVector time_weights, RVector density,
                           RMatrix position_density, double floor)
    : grid_(std::move(grid)),
      times_(std::move(times)),
      weights_(std::move(time_weights)),
      f_(std::move(density)),
      psi_sq_(std::move(position_density)),
      floor_(floor) {
  const auto k = times_.size();
  if (weights_.size() != k || f_.size() != k || psi_sq_.rows() != k ||
      static_cast<std::size_t>(psi_sq_.cols()) != grid_.size()) {
    throw RepresentationError("joint density components have inconsistent shapes");
  }
  if ((f_.array() < 0.0).any() || (psi_sq_.array() < 0.0).any()) {
    throw DomainError("joint density inputs must be nonnegative");
  }
  p_ = f_.asDiagonal() * psi_sq_;
  g_ = p_.transpose() * weights_;
}

double JointDensity::dt() const noexcept {
  return times_.size() >= 2 ? times_[1] - times_[0] : 0.0;
}

RVector JointDensity::time_marginal() const { return p_.rowwise().sum() * dx(); }

double JointDensity::total_mass() const { return weights_.dot(time_marginal()); }

RVector JointDensity::conditional_time_density(std::size_t point) const {
  if (point >= n_points()) throw DomainError("grid index out of range");
  const auto i = static_cast<Eigen::Index>(point);
  if (!(g_[i] > floor_)) {
    throw UndefinedConditionalError("spatial marginal at x = " + format_double(grid_.x(point)) +
                                    " is below the floor; the conditional is undefined");
  }
  return p_.col(i) / g_[i];
}

JointDensity joint_density(const Trajectory& traj, const CollapseDistribution& dist, double floor) {
  const SpatialGrid& grid = grid_of(traj.representation());
  if (dist.is_delta()) {
    throw VariantError("delta distribution collapses to a single slice; use delta_spatial_density");
  }
  const CollapseQuadrature q = collapse_quadrature(traj.time_grid(), dist);
  const auto k = static_cast<Eigen::Index>(q.n_nodes);
  const auto n = static_cast<Eigen::Index>(grid.size());
  RMatrix psi_sq(k, n);
  parallel_for(q.n_nodes, [&](std::size_t j) {
    const auto jj = static_cast<Eigen::Index>(j);
    psi_sq.row(jj) = traj.slices().col(jj).cwiseAbs2().transpose();
  });
  return JointDensity(grid, q.times, q.weights, q.density, std::move(psi_sq), floor);
}

RVector delta_spatial_density(const Trajectory& traj, const CollapseDistribution& dist) {
  grid_of(traj.representation());
  const auto at = dist.delta_time();
  if (!at) throw VariantError("delta_spatial_density needs a delta distribution");
  const auto [lower, frac] = bracket(traj.time_grid(), *at);
  const auto lo = static_cast<Eigen::Index>(lower);
  RVector g = traj.slices().col(lo).cwiseAbs2();
  if (frac > 0.0) g = (1.0 - frac) * g + frac * traj.slices().col(lo + 1).cwiseAbs2();
  return g;
}

RVector spatial_marginal(const JointDensity& joint) { return joint.spatial_marginal(); }

RVector conditional_time_density(const JointDensity& joint, double x) {
  return joint.conditional_time_density(joint.grid().nearest_index(x));
}

BayesReport bayes_consistency(const JointDensity& joint) {
  BayesReport r{0.0, 0.0, 0, 0};
  const RMatrix& p = joint.p();
  const RMatrix& psi_sq = joint.position_density();
  const RVector& f = joint.collapse_density();
  const RVector& g = joint.spatial_marginal();
  for (Eigen::Index i = 0; i < p.cols(); ++i) {
    if (!(g[i] > joint.floor())) {
      ++r.skipped_points;
      continue;
    }
    ++r.checked_points;
    for (Eigen::Index k = 0; k < p.rows(); ++k) {
      const double from_position = psi_sq(k, i) * f[k];
      const double phi_sq = p(k, i) / g[i];
      const double from_time = phi_sq * g[i];
      r.max_residual_position_side = std::max(r.max_residual_position_side, std::abs(from_position - p(k, i)));
      r.max_residual_time_side = std::max(r.max_residual_time_side, std::abs(from_time - p(k, i)));
    }
  }
  return r;
}

void write_joint_csv(const JointDensity& joint, const std::filesystem::path& path) {
  CsvWriter out(path, {"x", "t", "p"});
  for (Eigen::Index k = 0; k < joint.p().rows(); ++k) {
    for (Eigen::Index i = 0; i < joint.p().cols(); ++i) {
      out.row({joint.grid().x(static_cast<std::size_t>(i)), joint.times()[k], joint.p()(k, i)});
    }
  }
}

void write_joint_binary(const JointDensity& joint, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  PxtHeader h;
  h.n_times = static_cast<std::uint32_t>(joint.n_times());
  h.n_points = static_cast<std::uint32_t>(joint.n_points());
  h.dx = joint.dx();
  h.dt = joint.dt();
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  // Eigen is column-major; emit time-major rows.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = joint.p();
  out.write(reinterpret_cast<const char*>(rows.data()),
            static_cast<std::streamsize>(rows.size() * sizeof(double)));
  if (!out) throw Error("failed writing " + path.string());
}

std::pair<PxtHeader, RMatrix> read_joint_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  PxtHeader h;
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic.data(), "PXT1", 4) != 0) {
    throw ParseError(path.string(), "missing PXT1 header");
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(h.n_times, h.n_points);
  in.read(reinterpret_cast<char*>(rows.data()), static_cast<std::streamsize>(rows.size() * sizeof(double)));
  if (!in) throw ParseError(path.string(), "truncated PXT1 payload");
  return {h, RMatrix(rows)};
}

}  // namespace chronos
