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

#ifndef CHRONOS_TIME_OPERATOR_HPP
#define CHRONOS_TIME_OPERATOR_HPP

#include <functional>

#include "chronos/propagator.hpp"

namespace chronos {

/// A family of states indexed by time node, viewed as a single object.
/// Row k holds the amplitudes at t_k.
struct SpacetimeFunction {
  TimeGrid time_grid;
  double weight = 1.0;  ///< spatial measure (dx on a grid, 1 on a basis)
  CMatrix values;       ///< n_nodes x dimension

  SpacetimeFunction(TimeGrid grid, double weight, CMatrix values);

  static SpacetimeFunction from_trajectory(const Trajectory& traj);
  /// values(k, i) = fn(t_k, i).
  static SpacetimeFunction from_function(const TimeGrid& grid, std::size_t dimension, double weight,
                                         const std::function<cplx(double, std::size_t)>& fn);

  std::size_t n_nodes() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Multiplies row k by t_k.
SpacetimeFunction apply_T(const SpacetimeFunction& sf);

/// i hbar d/dt along the time axis: centered differences inside, second-order
/// one-sided stencils at both ends. Throws DomainError below three nodes.
SpacetimeFunction apply_time_generator(const SpacetimeFunction& sf, double hbar = 1.0);

struct CommutatorReport {
  /// max over interior nodes of ||(T G - G T) sf + i hbar sf||
  double residual;
  /// Least-squares c in (T G - G T) sf = c sf over interior nodes.
  cplx measured_constant;
};

/// Interior nodes only. The result is meaningful for sf smooth in t.
CommutatorReport commutator_residual(const SpacetimeFunction& sf, double hbar = 1.0);

enum class TimeClosure { OneSided, Periodic };

struct HermiticityProbe {
  /// max |M - M^+| where M^+ is the adjoint in the weighted inner product.
  double t_asymmetry;
  double g_asymmetry;
  /// Per-row max of |G - G^+|, for locating the asymmetry.
  RVector g_row_asymmetry;
};

/// Builds the matrices of T and G on the time axis and measures how far each
/// is from self-adjoint under <u, v> = sum_k w_k conj(u_k) v_k.
HermiticityProbe hermiticity_probe(const TimeGrid& grid, const RVector& weights, TimeClosure closure,
                                   double hbar = 1.0);

/// <sf_k | T | sf_k> / <sf_k | sf_k> for every row with nonzero norm (NaN otherwise).
RVector time_label_expectations(const SpacetimeFunction& sf);

struct GeneratorConsistency {
  double interior;   ///< max over interior nodes of ||G sf - H sf||
  double endpoints;  ///< same at the first and last node
};

GeneratorConsistency generator_vs_hamiltonian(const Trajectory& traj);

}  // namespace chronos

#endif  // CHRONOS_TIME_OPERATOR_HPP
