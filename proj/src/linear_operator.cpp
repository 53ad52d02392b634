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

#include "chronos/linear_operator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "chronos/errors.hpp"
#include "fft.hpp"

namespace chronos {

namespace {

constexpr double kHermitianClaimTolerance = 1e-12;

void require_finite(const RVector& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + " contains non-finite values");
}

}  // namespace

struct LinearOperator::Impl {
  Kind kind;
  Representation rep = FiniteDim{0};
  bool hermitian = false;
  CMatrix matrix;            // Dense
  RVector diagonal;          // PositionDiagonal, MomentumDiagonal
  std::vector<Term> terms;   // Composite
};

LinearOperator::LinearOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

double hermiticity_residual(const CMatrix& a) {
  if (a.rows() != a.cols()) throw RepresentationError("hermiticity check needs a square matrix");
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

LinearOperator LinearOperator::dense(Representation rep, CMatrix matrix, bool hermitian) {
  const auto n = static_cast<Eigen::Index>(chronos::dimension(rep));
  if (matrix.rows() != n || matrix.cols() != n) {
    throw RepresentationError("dense operator of size " + std::to_string(matrix.rows()) + "x" +
                              std::to_string(matrix.cols()) + " does not match dimension " +
                              std::to_string(n));
  }
  if (!matrix.allFinite()) throw DomainError("dense operator contains non-finite entries");
  if (hermitian) {
    const double r = hermiticity_residual(matrix);
    if (!(r < kHermitianClaimTolerance)) {
      throw ContractError("operator declared Hermitian but max |A - A^H| = " + std::to_string(r));
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Dense;
  impl->rep = std::move(rep);
  impl->hermitian = hermitian;
  impl->matrix = std::move(matrix);
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::dense(CMatrix matrix, bool hermitian) {
  if (matrix.rows() != matrix.cols()) throw RepresentationError("dense operator must be square");
  const auto n = static_cast<std::size_t>(matrix.rows());
  return dense(FiniteDim{n}, std::move(matrix), hermitian);
}

LinearOperator LinearOperator::position_diagonal(const SpatialGrid& grid, RVector values) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw RepresentationError("position-diagonal values do not match the grid size");
  }
  require_finite(values, "position-diagonal operator");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::PositionDiagonal;
  impl->rep = grid;
  impl->hermitian = true;
  impl->diagonal = std::move(values);
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::momentum_diagonal(const SpatialGrid& grid, RVector values) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw RepresentationError("momentum-diagonal values do not match the grid size");
  }
  require_finite(values, "momentum-diagonal operator");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::MomentumDiagonal;
  impl->rep = grid;
  impl->hermitian = true;
  impl->diagonal = std::move(values);
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::identity(const Representation& rep) {
  if (const auto* g = std::get_if<SpatialGrid>(&rep)) {
    return position_diagonal(*g, RVector::Ones(static_cast<Eigen::Index>(g->size())));
  }
  const auto n = static_cast<Eigen::Index>(chronos::dimension(rep));
  return dense(rep, CMatrix::Identity(n, n), true);
}

LinearOperator LinearOperator::sum(std::vector<Term> terms) {
  if (terms.empty()) throw DomainError("composite operator needs at least one term");
  const Representation& rep = terms.front().op.representation();
  bool hermitian = true;
  for (const auto& t : terms) {
    require_same_representation(rep, t.op.representation());
    if (!std::isfinite(t.coefficient)) throw DomainError("non-finite composite coefficient");
    hermitian = hermitian && t.op.is_hermitian();
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Composite;
  impl->rep = rep;
  impl->hermitian = hermitian;
  impl->terms = std::move(terms);
  return LinearOperator(std::move(impl));
}

LinearOperator::Kind LinearOperator::kind() const noexcept { return impl_->kind; }
const Representation& LinearOperator::representation() const noexcept { return impl_->rep; }
std::size_t LinearOperator::dimension() const noexcept { return chronos::dimension(impl_->rep); }
bool LinearOperator::is_hermitian() const noexcept { return impl_->hermitian; }

const RVector& LinearOperator::diagonal() const {
  if (impl_->kind != Kind::PositionDiagonal && impl_->kind != Kind::MomentumDiagonal) {
    throw UnsupportedOperatorError("operator is not diagonal");
  }
  return impl_->diagonal;
}

const CMatrix& LinearOperator::matrix() const {
  if (impl_->kind != Kind::Dense) throw UnsupportedOperatorError("operator is not stored densely");
  return impl_->matrix;
}

const std::vector<LinearOperator::Term>& LinearOperator::terms() const {
  if (impl_->kind != Kind::Composite) throw UnsupportedOperatorError("operator is not composite");
  return impl_->terms;
}

CVector LinearOperator::apply(const CVector& v) const {
  if (static_cast<std::size_t>(v.size()) != dimension()) {
    throw RepresentationError("operator of dimension " + std::to_string(dimension()) +
                              " applied to vector of length " + std::to_string(v.size()));
  }
  switch (impl_->kind) {
    case Kind::Dense:
      return impl_->matrix * v;
    case Kind::PositionDiagonal:
      return impl_->diagonal.cast<cplx>().cwiseProduct(v);
    case Kind::MomentumDiagonal: {
      detail::Fft fft(dimension());
      CVector w = v;
      fft.forward(w);
      w = w.cwiseProduct(impl_->diagonal.cast<cplx>());
      fft.inverse(w);
      return w;
    }
    case Kind::Composite: {
      CVector out = CVector::Zero(v.size());
      for (const auto& t : impl_->terms) out += t.coefficient * t.op.apply(v);
      return out;
    }
  }
  throw UnsupportedOperatorError("unknown operator kind");
}

StateVector LinearOperator::apply(const StateVector& psi) const {
  require_same_representation(impl_->rep, psi.representation());
  return StateVector(psi.representation(), apply(psi.amplitudes()));
}

CMatrix LinearOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  switch (impl_->kind) {
    case Kind::Dense:
      return impl_->matrix;
    case Kind::PositionDiagonal:
      return impl_->diagonal.cast<cplx>().asDiagonal();
    case Kind::MomentumDiagonal: {
      CMatrix out(n, n);
      for (Eigen::Index j = 0; j < n; ++j) out.col(j) = apply(CVector(CVector::Unit(n, j)));
      return out;
    }
    case Kind::Composite: {
      CMatrix out = CMatrix::Zero(n, n);
      for (const auto& t : impl_->terms) out += t.coefficient * t.op.to_dense();
      return out;
    }
  }
  throw UnsupportedOperatorError("unknown operator kind");
}

std::optional<LinearOperator::Split> LinearOperator::split() const {
  if (!is_grid(impl_->rep)) return std::nullopt;
  const auto n = static_cast<Eigen::Index>(dimension());
  Split s{RVector::Zero(n), RVector::Zero(n)};
  bool ok = true;
  auto accumulate = [&](const LinearOperator& op, double c, auto&& self) -> void {
    switch (op.kind()) {
      case Kind::PositionDiagonal:
        s.position_part += c * op.diagonal();
        break;
      case Kind::MomentumDiagonal:
        s.momentum_part += c * op.diagonal();
        break;
      case Kind::Composite:
        for (const auto& t : op.terms()) self(t.op, c * t.coefficient, self);
        break;
      case Kind::Dense:
        ok = false;
        break;
    }
  };
  accumulate(*this, 1.0, accumulate);
  if (!ok) return std::nullopt;
  return s;
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  return LinearOperator::sum({{1.0, a}, {1.0, b}});
}

LinearOperator operator*(double s, const LinearOperator& a) {
  return LinearOperator::sum({{s, a}});
}

Expectation expectation_report(const LinearOperator& op, const StateVector& psi) {
  if (!op.is_hermitian()) throw ContractError("expectation value requires a Hermitian operator");
  require_same_representation(op.representation(), psi.representation());
  const cplx v = psi.amplitudes().dot(op.apply(psi.amplitudes())) * psi.weight();
  return {v.real(), std::abs(v.imag())};
}

double expectation(const LinearOperator& op, const StateVector& psi) {
  return expectation_report(op, psi).value;
}

double standard_deviation(const LinearOperator& op, const StateVector& psi) {
  if (!op.is_hermitian()) throw ContractError("standard deviation requires a Hermitian operator");
  require_same_representation(op.representation(), psi.representation());
  const CVector a_psi = op.apply(psi.amplitudes());
  const double mean = psi.amplitudes().dot(a_psi).real() * psi.weight();
  const double second = a_psi.squaredNorm() * psi.weight();
  return std::sqrt(std::max(0.0, second - mean * mean));
}

}  // namespace chronos
