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

#include "chronos/smear.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/parallel.hpp"
#include "chronos/quadrature.hpp"

namespace chronos {

namespace {

constexpr double kFlatRate = 1e-12;

std::size_t last_covered_node(const TimeGrid& grid, const CollapseDistribution& dist) {
  const double span = grid.t_max();
  if (dist.t_max() > span * (1.0 + 1e-12)) {
    throw CoverageError("collapse support ends at " + format_double(dist.t_max()) +
                        " but the trajectory stops at " + format_double(span));
  }
  const auto node = grid.node_index(dist.t_max());
  if (!node) {
    throw CoverageError("collapse support end " + format_double(dist.t_max()) +
                        " does not fall on a time node");
  }
  if (*node < 1) throw CoverageError("collapse support covers less than one time step");
  return *node;
}

}  // namespace

CollapseQuadrature collapse_quadrature(const TimeGrid& grid, const CollapseDistribution& dist) {
  if (dist.is_delta()) throw VariantError("delta distribution has no quadrature; use the delta branch");
  const std::size_t last = last_covered_node(grid, dist);
  const auto n = static_cast<Eigen::Index>(last + 1);
  CollapseQuadrature q;
  q.n_nodes = last + 1;
  q.times.resize(n);
  q.density.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = grid.t(static_cast<std::size_t>(k));
    q.times[k] = t;
    q.density[k] = dist.pdf(std::min(t, dist.t_max()));
  }
  q.weights = simpson_weights(last, grid.dt());
  q.trapezoid = trapezoid_weights(last, grid.dt());
  return q;
}

SliceInterpolation bracket(const TimeGrid& grid, double t) {
  if (!(t >= 0.0 && t <= grid.t_max() * (1.0 + 1e-12))) {
    throw CoverageError("time " + format_double(t) + " lies outside the trajectory");
  }
  if (const auto k = grid.node_index(t)) return {*k, 0.0};
  const double s = t / grid.dt();
  auto lower = static_cast<std::size_t>(std::floor(s));
  if (lower >= grid.n_steps()) lower = grid.n_steps() - 1;
  return {lower, s - static_cast<double>(lower)};
}

SmearReport smeared_expectation(const Trajectory& traj, const CollapseDistribution& dist,
                                const LinearOperator& op) {
  require_same_representation(traj.representation(), op.representation());
  const TimeGrid& grid = traj.time_grid();
  SmearReport r;

  if (const auto at = dist.delta_time()) {
    const auto [lower, frac] = bracket(grid, *at);
    r.times = grid.nodes();
    r.expectation = expectation_series(traj, op);
    const auto n = r.times.size();
    r.density = RVector::Zero(n);
    r.integrand = RVector::Zero(n);
    r.weights = RVector::Zero(n);
    const auto lo = static_cast<Eigen::Index>(lower);
    r.value = frac == 0.0 ? r.expectation[lo]
                          : (1.0 - frac) * r.expectation[lo] + frac * r.expectation[lo + 1];
    r.delta_time = *at;
    return r;
  }

  const CollapseQuadrature q = collapse_quadrature(grid, dist);
  const auto n = static_cast<Eigen::Index>(q.n_nodes);
  r.times = q.times;
  r.density = q.density;
  r.weights = q.weights;
  r.expectation.resize(n);
  parallel_for(q.n_nodes, [&](std::size_t k) {
    r.expectation[static_cast<Eigen::Index>(k)] = expectation(op, traj.state(k));
  });
  r.integrand = r.density.cwiseProduct(r.expectation);
  r.value = weighted_sum({r.weights.data(), q.n_nodes}, {r.integrand.data(), q.n_nodes});
  const double trap = weighted_sum({q.trapezoid.data(), q.n_nodes}, {r.integrand.data(), q.n_nodes});
  r.quadrature_error = std::abs(r.value - trap);
  return r;
}

double smeared_time_expectation(const CollapseDistribution& dist) { return dist.moment(1); }

void write_smear_csv(const SmearReport& report, const std::filesystem::path& path) {
  CsvWriter out(path, {"t", "f", "expectation", "integrand"});
  for (Eigen::Index k = 0; k < report.times.size(); ++k) {
    out.row({report.times[k], report.density[k], report.expectation[k], report.integrand[k]});
  }
}

SmearedState::SmearedState(std::shared_ptr<const Trajectory> traj, CollapseDistribution dist,
                           std::optional<CMatrix> matrix, std::string rule)
    : trajectory_(std::move(traj)),
      distribution_(std::move(dist)),
      matrix_(std::move(matrix)),
      rule_(std::move(rule)) {}

const CMatrix& SmearedState::matrix() const {
  if (!matrix_) throw UnsupportedOperatorError("matrix-free smeared state has no dense matrix");
  return *matrix_;
}

double SmearedState::trace_with(const LinearOperator& op) const {
  require_same_representation(representation(), op.representation());
  if (!matrix_) return smeared_expectation(*trajectory_, distribution_, op).value;
  const CMatrix& omega = *matrix_;
  const auto n = omega.cols();
  // Tr(Omega A) = Tr(A Omega) = sum_j (A Omega)_jj.
  RVector diag(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    const auto jj = static_cast<Eigen::Index>(j);
    diag[jj] = op.apply(CVector(omega.col(jj)))[jj].real();
  });
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) acc += diag[j];
  return acc;
}

SmearedState build_omega(std::shared_ptr<const Trajectory> traj, const CollapseDistribution& dist,
                         const OmegaOptions& options) {
  if (!traj) throw DomainError("build_omega needs a trajectory");
  const std::size_t dim = traj->dimension();
  const TimeGrid& grid = traj->time_grid();

  if (dim > options.dense_cap) {
    if (!options.allow_matrix_free) {
      throw ResourceError("dense smeared state of dimension " + std::to_string(dim) +
                          " exceeds the cap of " + std::to_string(options.dense_cap));
    }
    // Validate coverage up front so the handle never defers a coverage error.
    if (const auto at = dist.delta_time()) {
      bracket(grid, *at);
      return SmearedState(std::move(traj), dist, std::nullopt, "delta-interpolation");
    }
    collapse_quadrature(grid, dist);
    return SmearedState(std::move(traj), dist, std::nullopt, "composite-simpson");
  }

  const auto n = static_cast<Eigen::Index>(dim);
  const double w = traj->weight();
  const CMatrix& s = traj->slices();
  CMatrix omega = CMatrix::Zero(n, n);

  if (const auto at = dist.delta_time()) {
    const auto [lower, frac] = bracket(grid, *at);
    const auto lo = static_cast<Eigen::Index>(lower);
    omega.selfadjointView<Eigen::Lower>().rankUpdate(CVector(s.col(lo)), (1.0 - frac) * w);
    if (frac > 0.0) omega.selfadjointView<Eigen::Lower>().rankUpdate(CVector(s.col(lo + 1)), frac * w);
    omega.triangularView<Eigen::StrictlyUpper>() = omega.adjoint();
    return SmearedState(std::move(traj), dist, std::move(omega), "delta-interpolation");
  }

  const CollapseQuadrature q = collapse_quadrature(grid, dist);
  // Omega = w * B B^H with column k of B equal to sqrt(weight_k f_k) psi_k.
  std::vector<Eigen::Index> used;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(q.n_nodes); ++k) {
    if (q.weights[k] * q.density[k] > 0.0) used.push_back(k);
  }
  CMatrix b(n, static_cast<Eigen::Index>(used.size()));
  for (std::size_t c = 0; c < used.size(); ++c) {
    const Eigen::Index k = used[c];
    b.col(static_cast<Eigen::Index>(c)) = std::sqrt(q.weights[k] * q.density[k]) * s.col(k);
  }
  omega.selfadjointView<Eigen::Lower>().rankUpdate(b, w);
  omega.triangularView<Eigen::StrictlyUpper>() = omega.adjoint();
  return SmearedState(std::move(traj), dist, std::move(omega), "composite-simpson");
}

OmegaCheckReport omega_trace_checks(const SmearedState& omega,
                                    std::span<const LinearOperator> operators) {
  OmegaCheckReport r;
  for (const auto& op : operators) {
    const double smeared = smeared_expectation(omega.trajectory(), omega.distribution(), op).value;
    const double tr = omega.trace_with(op);
    r.operators.push_back({tr, smeared, std::abs(tr - smeared)});
  }
  if (omega.form() == SmearedState::Form::MatrixFree) return r;

  const CMatrix& m = omega.matrix();
  r.trace = m.trace().real();
  r.hermiticity_residual = hermiticity_residual(m);
  r.purity = m.cwiseAbs2().sum();
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue computation for Omega failed");
  const RVector& ev = eig.eigenvalues();  // ascending
  r.min_eigenvalue = ev[0];
  r.second_eigenvalue = ev.size() >= 2 ? ev[ev.size() - 2] : 0.0;
  return r;
}

GriffithsTime griffiths_delta_t(const Trajectory& traj, const LinearOperator& op, double t) {
  const TimeGrid& grid = traj.time_grid();
  const auto node = grid.node_index(t);
  if (!node) throw DomainError("Griffiths time scale needs t on a time node");
  if (*node == 0 || *node >= grid.n_steps()) {
    throw DomainError("Griffiths time scale needs an interior node (centred difference)");
  }
  const std::size_t k = *node;
  const double before = expectation(op, traj.state(k - 1));
  const double after = expectation(op, traj.state(k + 1));
  GriffithsTime g;
  g.rate = (after - before) / (2.0 * grid.dt());
  g.spread = standard_deviation(op, traj.state(k));
  g.delta_t = std::abs(g.rate) < kFlatRate ? std::numeric_limits<double>::infinity()
                                           : g.spread / std::abs(g.rate);
  return g;
}

EnergyTimeReport energy_time_report(const Trajectory& traj, const CollapseDistribution& dist) {
  EnergyTimeReport r;
  r.delta_t = std::sqrt(std::max(0.0, dist.variance()));
  const StateVector psi0 = traj.state(0);
  r.mean_energy = expectation(traj.hamiltonian(), psi0);
  r.delta_e = standard_deviation(traj.hamiltonian(), psi0);
  r.product = r.delta_e * r.delta_t;
  r.hbar_half = 0.5 * traj.hbar();
  r.satisfies_bound = r.product >= r.hbar_half;
  return r;
}

}  // namespace chronos
