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

#ifndef CHRONOS_STATE_HPP
#define CHRONOS_STATE_HPP

#include <functional>

#include "chronos/grid.hpp"

namespace chronos {

/// Amplitudes of a pure state together with the space they live in.
///
/// On a grid the squared norm carries the dx measure, so a normalized
/// state satisfies sum |psi_i|^2 dx = 1.
class StateVector {
 public:
  /// Throws RepresentationError when the amplitude count does not match.
  StateVector(Representation rep, CVector amplitudes);

  static StateVector basis(std::size_t n, std::size_t index);
  /// Samples `fn` at the grid nodes (no normalization).
  static StateVector from_function(const SpatialGrid& grid,
                                   const std::function<cplx(double)>& fn);

  const Representation& representation() const noexcept { return rep_; }
  const CVector& amplitudes() const noexcept { return amps_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  double weight() const noexcept { return measure(rep_); }

  double squared_norm() const;
  double norm() const;
  /// Returns a copy with unit norm. Throws DomainError for the zero vector.
  StateVector normalized() const;

  /// Probability of each node (|psi_i|^2 dx) or basis index (|c_i|^2).
  RVector probabilities() const;

 private:
  Representation rep_;
  CVector amps_;
};

/// Throws RepresentationError if the two representations differ.
void require_same_representation(const Representation& a, const Representation& b);

/// <a|b> with the representation measure.
cplx inner_product(const StateVector& a, const StateVector& b);

/// Normalized Gaussian packet with position standard deviation `sigma`
/// (of |psi|^2), centred at x0 and carrying mean momentum p0.
StateVector gaussian_packet(const SpatialGrid& grid, double x0, double sigma, double p0,
                            double hbar = 1.0);

}  // namespace chronos

#endif  // CHRONOS_STATE_HPP
