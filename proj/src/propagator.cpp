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

#include "chronos/propagator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "chronos/errors.hpp"
#include "chronos/parallel.hpp"
#include "fft.hpp"

namespace chronos {

namespace {

constexpr double kSliceNormTolerance = 1e-8;
constexpr double kInitialNormTolerance = 1e-8;

void require_normalized(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > kInitialNormTolerance) {
    throw DomainError("initial state is not normalized (norm = " + std::to_string(psi.norm()) + ")");
  }
}

}  // namespace

TimeGrid::TimeGrid(double t_max, std::size_t n_steps) : t_max_(t_max), n_steps_(n_steps) {
  if (!std::isfinite(t_max) || !(t_max > 0.0)) throw DomainError("time grid needs finite t_max > 0");
  if (n_steps == 0) throw DomainError("time grid needs at least one step");
}

RVector TimeGrid::nodes() const {
  RVector out(static_cast<Eigen::Index>(n_nodes()));
  for (std::size_t k = 0; k < n_nodes(); ++k) out[static_cast<Eigen::Index>(k)] = t(k);
  return out;
}

std::size_t TimeGrid::nearest_node(double t) const noexcept {
  const double s = std::round(t / dt());
  if (!(s > 0.0)) return 0;
  if (s >= static_cast<double>(n_steps_)) return n_steps_;
  return static_cast<std::size_t>(s);
}

std::optional<std::size_t> TimeGrid::node_index(double t, double rel_tol) const noexcept {
  const std::size_t k = nearest_node(t);
  if (std::abs(this->t(k) - t) <= rel_tol * dt()) return k;
  return std::nullopt;
}

Trajectory::Trajectory(TimeGrid grid, Representation rep, CMatrix slices,
                       LinearOperator hamiltonian, double hbar)
    : grid_(std::move(grid)),
      rep_(std::move(rep)),
      slices_(std::move(slices)),
      hamiltonian_(std::move(hamiltonian)),
      hbar_(hbar) {
  if (static_cast<std::size_t>(slices_.cols()) != grid_.n_nodes()) {
    throw RepresentationError("trajectory needs one slice per time node");
  }
  if (static_cast<std::size_t>(slices_.rows()) != chronos::dimension(rep_)) {
    throw RepresentationError("trajectory slices do not match the representation");
  }
  require_same_representation(rep_, hamiltonian_.representation());
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  const double dev = max_norm_deviation();
  if (!(dev <= kSliceNormTolerance)) {
    throw DomainError("trajectory slice deviates from unit norm by " + std::to_string(dev));
  }
}

StateVector Trajectory::state(std::size_t k) const {
  if (k >= n_nodes()) throw DomainError("time node index out of range");
  return StateVector(rep_, slices_.col(static_cast<Eigen::Index>(k)));
}

double Trajectory::max_norm_deviation() const {
  const double w = weight();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < slices_.cols(); ++k) {
    worst = std::max(worst, std::abs(std::sqrt(slices_.col(k).squaredNorm() * w) - 1.0));
  }
  return worst;
}

SplitOperatorStepper::SplitOperatorStepper(const LinearOperator& hamiltonian, double dt, double hbar)
    : rep_(hamiltonian.representation()) {
  const auto parts = hamiltonian.split();
  if (!parts) {
    throw UnsupportedOperatorError(
        "split-operator propagation needs a momentum-diagonal plus position-diagonal Hamiltonian");
  }
  const auto n = parts->position_part.size();
  half_potential_phase_.resize(n);
  kinetic_phase_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    half_potential_phase_[i] = std::exp(cplx(0.0, -parts->position_part[i] * dt / (2.0 * hbar)));
    kinetic_phase_[i] = std::exp(cplx(0.0, -parts->momentum_part[i] * dt / hbar));
  }
  has_kinetic_ = !parts->momentum_part.isZero(0.0);
}

void SplitOperatorStepper::step(CVector& psi) const {
  psi.array() *= half_potential_phase_.array();
  if (has_kinetic_) {
    const detail::Fft fft(static_cast<std::size_t>(psi.size()));
    fft.forward(psi);
    psi.array() *= kinetic_phase_.array();
    fft.inverse(psi);
  }
  psi.array() *= half_potential_phase_.array();
}

StateVector SplitOperatorStepper::advance(const StateVector& psi, std::size_t n_steps) const {
  require_same_representation(rep_, psi.representation());
  CVector v = psi.amplitudes();
  for (std::size_t s = 0; s < n_steps; ++s) step(v);
  return StateVector(psi.representation(), std::move(v));
}

Trajectory evolve_split_operator(const StateVector& psi0, const LinearOperator& hamiltonian,
                                 const TimeGrid& grid, double hbar) {
  if (!is_grid(psi0.representation())) {
    throw RepresentationError("split-operator propagation requires a grid state");
  }
  require_same_representation(psi0.representation(), hamiltonian.representation());
  require_normalized(psi0);
  const SplitOperatorStepper stepper(hamiltonian, grid.dt(), hbar);

  const auto n = static_cast<Eigen::Index>(psi0.size());
  CMatrix slices(n, static_cast<Eigen::Index>(grid.n_nodes()));
  CVector psi = psi0.amplitudes();
  slices.col(0) = psi;
  for (std::size_t k = 1; k < grid.n_nodes(); ++k) {
    stepper.step(psi);
    slices.col(static_cast<Eigen::Index>(k)) = psi;
  }
  return Trajectory(grid, psi0.representation(), std::move(slices), hamiltonian, hbar);
}

Trajectory evolve_exact(const StateVector& psi0, const LinearOperator& hamiltonian,
                        const TimeGrid& grid, double hbar) {
  require_same_representation(psi0.representation(), hamiltonian.representation());
  require_normalized(psi0);
  const CMatrix h = hamiltonian.to_dense();
  if (!hamiltonian.is_hermitian() && hermiticity_residual(h) > 1e-12) {
    throw ContractError("exact propagation requires a Hermitian Hamiltonian");
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  if (eig.info() != Eigen::Success) throw NumericalError("Hamiltonian eigendecomposition failed");

  const CMatrix& vecs = eig.eigenvectors();
  const RVector& energies = eig.eigenvalues();
  const CVector coeffs = vecs.adjoint() * psi0.amplitudes();

  const auto n = static_cast<Eigen::Index>(psi0.size());
  CMatrix slices(n, static_cast<Eigen::Index>(grid.n_nodes()));
  parallel_for(grid.n_nodes(), [&](std::size_t k) {
    const double t = grid.t(k);
    CVector phased(coeffs.size());
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
      phased[j] = std::exp(cplx(0.0, -energies[j] * t / hbar)) * coeffs[j];
    }
    slices.col(static_cast<Eigen::Index>(k)) = vecs * phased;
  });
  slices.col(0) = psi0.amplitudes();
  return Trajectory(grid, psi0.representation(), std::move(slices), hamiltonian, hbar);
}

double schrodinger_residual(const Trajectory& traj) {
  const std::size_t n = traj.n_nodes();
  if (n < 3) throw DomainError("Schrodinger residual needs at least three slices");
  const double dt = traj.time_grid().dt();
  const cplx ih(0.0, traj.hbar());
  const CMatrix& s = traj.slices();
  RVector per_node = RVector::Zero(static_cast<Eigen::Index>(n));
  parallel_for(n - 2, [&](std::size_t j) {
    const auto k = static_cast<Eigen::Index>(j + 1);
    const CVector lhs = ih * (s.col(k + 1) - s.col(k - 1)) / (2.0 * dt);
    const CVector rhs = traj.hamiltonian().apply(CVector(s.col(k)));
    per_node[k] = std::sqrt((lhs - rhs).squaredNorm() * traj.weight());
  });
  return per_node.maxCoeff();
}

RVector expectation_series(const Trajectory& traj, const LinearOperator& op) {
  require_same_representation(traj.representation(), op.representation());
  RVector out(static_cast<Eigen::Index>(traj.n_nodes()));
  parallel_for(traj.n_nodes(), [&](std::size_t k) {
    out[static_cast<Eigen::Index>(k)] = expectation(op, traj.state(k));
  });
  return out;
}

RVector energy_series(const Trajectory& traj) {
  return expectation_series(traj, traj.hamiltonian());
}

}  // namespace chronos
