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

#ifndef CHRONOS_PROPAGATOR_HPP
#define CHRONOS_PROPAGATOR_HPP

#include <cstddef>
#include <optional>

#include "chronos/linear_operator.hpp"
#include "chronos/state.hpp"

namespace chronos {

/// Uniform time nodes t_k = k * t_max / n_steps, k = 0..n_steps.
class TimeGrid {
 public:
  /// Throws DomainError unless t_max > 0 is finite and n_steps >= 1.
  TimeGrid(double t_max, std::size_t n_steps);

  double t_max() const noexcept { return t_max_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  std::size_t n_nodes() const noexcept { return n_steps_ + 1; }
  double dt() const noexcept { return t_max_ / static_cast<double>(n_steps_); }
  double t(std::size_t k) const noexcept {
    return t_max_ * static_cast<double>(k) / static_cast<double>(n_steps_);
  }
  RVector nodes() const;

  /// Closest node to `t`, clamped to [0, n_steps].
  std::size_t nearest_node(double t) const noexcept;
  /// Index of the node equal to `t` within `rel_tol * dt`, if any.
  std::optional<std::size_t> node_index(double t, double rel_tol = 1e-9) const noexcept;

  bool operator==(const TimeGrid&) const = default;

 private:
  double t_max_;
  std::size_t n_steps_;
};

/// The recorded solution |psi(t_k)> at every node of a time grid.
///
/// Column k of `slices()` holds the amplitudes at t_k. Immutable.
class Trajectory {
 public:
  /// Throws DomainError if any slice deviates from unit norm by more than 1e-8.
  Trajectory(TimeGrid grid, Representation rep, CMatrix slices, LinearOperator hamiltonian,
             double hbar);

  const TimeGrid& time_grid() const noexcept { return grid_; }
  const Representation& representation() const noexcept { return rep_; }
  const CMatrix& slices() const noexcept { return slices_; }
  const LinearOperator& hamiltonian() const noexcept { return hamiltonian_; }
  double hbar() const noexcept { return hbar_; }

  std::size_t n_nodes() const noexcept { return static_cast<std::size_t>(slices_.cols()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(slices_.rows()); }
  double weight() const noexcept { return measure(rep_); }
  StateVector state(std::size_t k) const;

  /// max_k | ||psi_k|| - 1 |.
  double max_norm_deviation() const;

 private:
  TimeGrid grid_;
  Representation rep_;
  CMatrix slices_;
  LinearOperator hamiltonian_;
  double hbar_;
};

/// One Strang step exp(-iV dt/2h) exp(-iT dt/h) exp(-iV dt/2h) for a
/// momentum-diagonal plus position-diagonal Hamiltonian. A negative dt
/// runs the dynamics backwards.
class SplitOperatorStepper {
 public:
  /// Throws UnsupportedOperatorError if `hamiltonian` does not split.
  SplitOperatorStepper(const LinearOperator& hamiltonian, double dt, double hbar = 1.0);

  void step(CVector& amplitudes) const;
  StateVector advance(const StateVector& psi, std::size_t n_steps) const;

 private:
  Representation rep_;
  CVector half_potential_phase_;
  CVector kinetic_phase_;
  bool has_kinetic_;
};

/// Second-order split-operator propagation on a periodic grid.
Trajectory evolve_split_operator(const StateVector& psi0, const LinearOperator& hamiltonian,
                                 const TimeGrid& grid, double hbar = 1.0);

/// Propagation by a single spectral decomposition of the dense Hamiltonian.
/// Accepts any representation; the Hamiltonian must be Hermitian.
Trajectory evolve_exact(const StateVector& psi0, const LinearOperator& hamiltonian,
                        const TimeGrid& grid, double hbar = 1.0);

/// max over interior nodes of || i hbar (psi_{k+1} - psi_{k-1}) / 2dt - H psi_k ||.
/// Throws DomainError for fewer than three slices.
double schrodinger_residual(const Trajectory& traj);

/// <H> at every slice.
RVector energy_series(const Trajectory& traj);
/// <A> at every slice.
RVector expectation_series(const Trajectory& traj, const LinearOperator& op);

}  // namespace chronos

#endif  // CHRONOS_PROPAGATOR_HPP
