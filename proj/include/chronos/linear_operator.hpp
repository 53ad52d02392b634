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

#ifndef CHRONOS_LINEAR_OPERATOR_HPP
#define CHRONOS_LINEAR_OPERATOR_HPP

#include <memory>
#include <optional>
#include <vector>

#include "chronos/grid.hpp"
#include "chronos/state.hpp"

namespace chronos {

/// Immutable linear operator on a representation.
///
/// Four storage kinds are supported: an explicit dense matrix, a real
/// diagonal in position space, a real diagonal in momentum space (applied
/// through the FFT), and a real-weighted sum of other operators. Copies
/// share the underlying storage.
class LinearOperator {
 public:
  enum class Kind { Dense, PositionDiagonal, MomentumDiagonal, Composite };

  struct Term;

  /// Hermitian claim is verified (max |A - A^H| < 1e-12) and throws
  /// ContractError if it fails.
  static LinearOperator dense(Representation rep, CMatrix matrix, bool hermitian);
  static LinearOperator dense(CMatrix matrix, bool hermitian);  // FiniteDim
  static LinearOperator position_diagonal(const SpatialGrid& grid, RVector values);
  static LinearOperator momentum_diagonal(const SpatialGrid& grid, RVector values);
  static LinearOperator identity(const Representation& rep);
  static LinearOperator sum(std::vector<Term> terms);

  Kind kind() const noexcept;
  const Representation& representation() const noexcept;
  std::size_t dimension() const noexcept;
  bool is_hermitian() const noexcept;

  /// Diagonal values for the two diagonal kinds; throws otherwise.
  const RVector& diagonal() const;
  /// Dense storage for the Dense kind; throws otherwise.
  const CMatrix& matrix() const;
  const std::vector<Term>& terms() const;

  CVector apply(const CVector& amplitudes) const;
  StateVector apply(const StateVector& psi) const;
  /// Explicit matrix acting on amplitude vectors.
  CMatrix to_dense() const;

  /// Momentum-diagonal plus position-diagonal decomposition, if the operator
  /// has that structure (possibly with one of the parts absent).
  struct Split {
    RVector momentum_part;
    RVector position_part;
  };
  std::optional<Split> split() const;

 private:
  struct Impl;
  explicit LinearOperator(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

struct LinearOperator::Term {
  double coefficient;
  LinearOperator op;
};

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator*(double s, const LinearOperator& a);

/// Largest entry of |A - A^H|.
double hermiticity_residual(const CMatrix& a);

struct Expectation {
  double value;
  double imag_residual;  ///< |Im <psi|A|psi>|, diagnostic only.
};

/// <psi|A|psi> for Hermitian A. Throws ContractError for a non-Hermitian
/// operator and RepresentationError for mismatched spaces.
Expectation expectation_report(const LinearOperator& op, const StateVector& psi);
double expectation(const LinearOperator& op, const StateVector& psi);

/// Standard deviation sqrt(<A^2> - <A>^2), with <A^2> = ||A psi||^2.
double standard_deviation(const LinearOperator& op, const StateVector& psi);

}  // namespace chronos

#endif  // CHRONOS_LINEAR_OPERATOR_HPP
