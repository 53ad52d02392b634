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

#include "chronos/state.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "chronos/errors.hpp"

namespace chronos {

StateVector::StateVector(Representation rep, CVector amplitudes)
    : rep_(std::move(rep)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != dimension(rep_)) {
    throw RepresentationError("state has " + std::to_string(amps_.size()) +
                              " amplitudes but representation has dimension " +
                              std::to_string(dimension(rep_)));
  }
}

StateVector StateVector::basis(std::size_t n, std::size_t index) {
  if (index >= n) throw DomainError("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(FiniteDim{n}, std::move(v));
}

StateVector StateVector::from_function(const SpatialGrid& grid,
                                       const std::function<cplx(double)>& fn) {
  CVector v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) v[static_cast<Eigen::Index>(i)] = fn(grid.x(i));
  return StateVector(grid, std::move(v));
}

double StateVector::squared_norm() const { return amps_.squaredNorm() * weight(); }

double StateVector::norm() const { return std::sqrt(squared_norm()); }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite state");
  return StateVector(rep_, amps_ / n);
}

RVector StateVector::probabilities() const { return amps_.cwiseAbs2() * weight(); }

void require_same_representation(const Representation& a, const Representation& b) {
  if (!(a == b)) throw RepresentationError("operands use different representations");
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  require_same_representation(a.representation(), b.representation());
  return a.amplitudes().dot(b.amplitudes()) * a.weight();
}

StateVector gaussian_packet(const SpatialGrid& grid, double x0, double sigma, double p0,
                            double hbar) {
  if (!(sigma > 0.0)) throw DomainError("gaussian width must be positive");
  const auto psi = StateVector::from_function(grid, [&](double x) {
    const double u = x - x0;
    return std::exp(cplx(-u * u / (4.0 * sigma * sigma), p0 * x / hbar));
  });
  return psi.normalized();
}

}  // namespace chronos
