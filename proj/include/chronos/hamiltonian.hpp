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

#ifndef CHRONOS_HAMILTONIAN_HPP
#define CHRONOS_HAMILTONIAN_HPP

#include <functional>

#include "chronos/linear_operator.hpp"

namespace chronos {

/// Physical constants of a run. Natural units by default.
struct Constants {
  double hbar = 1.0;
  double mass = 1.0;
  bool operator==(const Constants&) const = default;
};

/// Spectral kinetic term hbar^2 k^2 / 2m plus the sampled potential.
///
/// Throws DomainError for non-finite potential values or non-positive mass.
LinearOperator build_hamiltonian(const SpatialGrid& grid, const std::function<double(double)>& potential,
                                 const Constants& constants = {});

LinearOperator kinetic_operator(const SpatialGrid& grid, const Constants& constants = {});
LinearOperator position_operator(const SpatialGrid& grid);
LinearOperator momentum_operator(const SpatialGrid& grid, double hbar = 1.0);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace chronos

#endif  // CHRONOS_HAMILTONIAN_HPP
