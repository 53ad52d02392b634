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

#include "chronos/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "chronos/errors.hpp"

namespace chronos {

LinearOperator kinetic_operator(const SpatialGrid& grid, const Constants& constants) {
  if (!(constants.mass > 0.0) || !std::isfinite(constants.mass)) {
    throw DomainError("mass must be positive and finite");
  }
  if (!(constants.hbar > 0.0) || !std::isfinite(constants.hbar)) {
    throw DomainError("hbar must be positive and finite");
  }
  const RVector k = grid.wavenumbers();
  const double c = constants.hbar * constants.hbar / (2.0 * constants.mass);
  return LinearOperator::momentum_diagonal(grid, c * k.array().square().matrix());
}

LinearOperator build_hamiltonian(const SpatialGrid& grid,
                                 const std::function<double(double)>& potential,
                                 const Constants& constants) {
  RVector v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double value = potential(grid.x(i));
    if (!std::isfinite(value)) {
      throw DomainError("potential is not finite at x = " + std::to_string(grid.x(i)));
    }
    v[static_cast<Eigen::Index>(i)] = value;
  }
  return kinetic_operator(grid, constants) + LinearOperator::position_diagonal(grid, std::move(v));
}

LinearOperator position_operator(const SpatialGrid& grid) {
  return LinearOperator::position_diagonal(grid, grid.positions());
}

LinearOperator momentum_operator(const SpatialGrid& grid, double hbar) {
  return LinearOperator::momentum_diagonal(grid, hbar * grid.wavenumbers());
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace chronos
