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

#include "chronos/time_operator.hpp"

#include <cmath>
#include <limits>

#include "chronos/errors.hpp"

namespace chronos {

SpacetimeFunction::SpacetimeFunction(TimeGrid grid, double w, CMatrix v)
    : time_grid(std::move(grid)), weight(w), values(std::move(v)) {
  if (static_cast<std::size_t>(values.rows()) != time_grid.n_nodes()) {
    throw RepresentationError("spacetime function rows must match the time grid");
  }
  if (!(weight > 0.0)) throw DomainError("spatial weight must be positive");
}

SpacetimeFunction SpacetimeFunction::from_trajectory(const Trajectory& traj) {
  return SpacetimeFunction(traj.time_grid(), traj.weight(), traj.slices().transpose());
}

SpacetimeFunction SpacetimeFunction::from_function(const TimeGrid& grid, std::size_t dimension,
                                                   double weight,
                                                   const std::function<cplx(double, std::size_t)>& fn) {
  CMatrix v(static_cast<Eigen::Index>(grid.n_nodes()), static_cast<Eigen::Index>(dimension));
  for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
    for (std::size_t i = 0; i < dimension; ++i) {
      v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = fn(grid.t(k), i);
    }
  }
  return SpacetimeFunction(grid, weight, std::move(v));
}

SpacetimeFunction apply_T(const SpacetimeFunction& sf) {
  SpacetimeFunction out = sf;
  for (std::size_t k = 0; k < sf.n_nodes(); ++k) {
    out.values.row(static_cast<Eigen::Index>(k)) *= sf.time_grid.t(k);
  }
  return out;
}

SpacetimeFunction apply_time_generator(const SpacetimeFunction& sf, double hbar) {
  const auto n = static_cast<Eigen::Index>(sf.n_nodes());
  if (n < 3) throw DomainError("time generator needs at least three nodes");
  const cplx c(0.0, hbar / (2.0 * sf.time_grid.dt()));
  const CMatrix& v = sf.values;
  SpacetimeFunction out = sf;
  for (Eigen::Index k = 1; k + 1 < n; ++k) out.values.row(k) = c * (v.row(k + 1) - v.row(k - 1));
  out.values.row(0) = c * (-3.0 * v.row(0) + 4.0 * v.row(1) - v.row(2));
  out.values.row(n - 1) = c * (3.0 * v.row(n - 1) - 4.0 * v.row(n - 2) + v.row(n - 3));
  return out;
}

CommutatorReport commutator_residual(const SpacetimeFunction& sf, double hbar) {
  const SpacetimeFunction tg = apply_T(apply_time_generator(sf, hbar));
  const SpacetimeFunction gt = apply_time_generator(apply_T(sf), hbar);
  const CMatrix comm = tg.values - gt.values;
  const cplx ih(0.0, hbar);
  const auto n = static_cast<Eigen::Index>(sf.n_nodes());
  CommutatorReport r{0.0, cplx(0.0, 0.0)};
  cplx num(0.0, 0.0);
  double den = 0.0;
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    const auto row = sf.values.row(k);
    const double res = std::sqrt((comm.row(k) + ih * row).squaredNorm() * sf.weight);
    r.residual = std::max(r.residual, res);
    num += (row.conjugate() * comm.row(k).transpose())(0, 0);
    den += row.squaredNorm();
  }
  if (den > 0.0) r.measured_constant = num / den;
  return r;
}

HermiticityProbe hermiticity_probe(const TimeGrid& grid, const RVector& weights, TimeClosure closure,
                                   double hbar) {
  const auto n = static_cast<Eigen::Index>(grid.n_nodes());
  if (weights.size() != n) throw DomainError("one weight per time node is required");
  if ((weights.array() <= 0.0).any()) throw DomainError("time weights must be positive");
  if (n < 3) throw DomainError("time generator needs at least three nodes");

  CMatrix t = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) t(k, k) = grid.t(static_cast<std::size_t>(k));

  const cplx c(0.0, hbar / (2.0 * grid.dt()));
  CMatrix g = CMatrix::Zero(n, n);
  if (closure == TimeClosure::Periodic) {
    for (Eigen::Index k = 0; k < n; ++k) {
      g(k, (k + 1) % n) += c;
      g(k, (k + n - 1) % n) -= c;
    }
  } else {
    for (Eigen::Index k = 1; k + 1 < n; ++k) {
      g(k, k + 1) = c;
      g(k, k - 1) = -c;
    }
    g(0, 0) = -3.0 * c;
    g(0, 1) = 4.0 * c;
    g(0, 2) = -c;
    g(n - 1, n - 1) = 3.0 * c;
    g(n - 1, n - 2) = -4.0 * c;
    g(n - 1, n - 3) = c;
  }

  // Adjoint under the weighted inner product: W^{-1} M^H W.
  const RVector w = weights;
  const auto adjoint = [&](const CMatrix& m) {
    CMatrix a = m.adjoint();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) *= w[j] / w[i];
    }
    return a;
  };

  HermiticityProbe p;
  p.t_asymmetry = (t - adjoint(t)).cwiseAbs().maxCoeff();
  const RMatrix g_diff = (g - adjoint(g)).cwiseAbs();
  p.g_asymmetry = g_diff.maxCoeff();
  p.g_row_asymmetry = g_diff.rowwise().maxCoeff();
  return p;
}

RVector time_label_expectations(const SpacetimeFunction& sf) {
  const SpacetimeFunction t = apply_T(sf);
  RVector out(static_cast<Eigen::Index>(sf.n_nodes()));
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    const double norm = sf.values.row(k).squaredNorm();
    out[k] = norm > 0.0 ? (sf.values.row(k).conjugate() * t.values.row(k).transpose())(0, 0).real() / norm
                        : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

GeneratorConsistency generator_vs_hamiltonian(const Trajectory& traj) {
  const SpacetimeFunction sf = SpacetimeFunction::from_trajectory(traj);
  const SpacetimeFunction g = apply_time_generator(sf, traj.hbar());
  GeneratorConsistency r{0.0, 0.0};
  const auto n = static_cast<Eigen::Index>(sf.n_nodes());
  for (Eigen::Index k = 0; k < n; ++k) {
    const CVector h = traj.hamiltonian().apply(CVector(traj.slices().col(k)));
    const double d = std::sqrt((g.values.row(k).transpose() - h).squaredNorm() * sf.weight);
    double& slot = (k == 0 || k == n - 1) ? r.endpoints : r.interior;
    slot = std::max(slot, d);
  }
  return r;
}

}  // namespace chronos
