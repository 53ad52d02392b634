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

#include <cmath>
#include <memory>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "chronos/errors.hpp"
#include "chronos/hamiltonian.hpp"
#include "chronos/smear.hpp"
#include "oracles.hpp"

using namespace chronos;
using doctest::Approx;

namespace {

std::shared_ptr<const Trajectory> rabi(double t_max, std::size_t n) {
  const LinearOperator h = LinearOperator::dense(0.5 * pauli_x(), true);
  return std::make_shared<const Trajectory>(evolve_exact(StateVector::basis(2, 0), h, TimeGrid(t_max, n)));
}

LinearOperator sigma_z() { return LinearOperator::dense(pauli_z(), true); }

std::shared_ptr<const Trajectory> harmonic_ground(double t_max, std::size_t n) {
  const SpatialGrid g(-12.0, 12.0, 128);
  const LinearOperator h = build_hamiltonian(g, [](double x) { return 0.5 * x * x; });
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h.to_dense());
  const StateVector psi0(g, eig.eigenvectors().col(0) / std::sqrt(g.dx()));
  return std::make_shared<const Trajectory>(evolve_exact(psi0, h, TimeGrid(t_max, n)));
}

}  // namespace

TEST_CASE("rabi qubit smeared by an exponential matches the quadrature oracle") {
  const auto traj = rabi(30.0, 30000);
  const auto f = CollapseDistribution::exponential(1.0, 30.0);
  const SmearReport r = smeared_expectation(*traj, f, sigma_z());
  CHECK(std::abs(r.value - oracle::kRabiExp1T30) < 1e-10);
  CHECK(r.quadrature_error < 1e-6);
  CHECK(r.times.size() == 30001);
}

TEST_CASE("collapse quadrature covers exactly the support") {
  const auto traj = rabi(10.0, 1000);
  const CollapseQuadrature q = collapse_quadrature(traj->time_grid(), CollapseDistribution::uniform(0.0, 5.0, 5.0));
  CHECK(q.n_nodes == 501);
  CHECK(q.weights.dot(q.density) == Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(collapse_quadrature(traj->time_grid(), CollapseDistribution::uniform(0.0, 5.0, 12.0)),
                  CoverageError);
  CHECK_THROWS_AS(collapse_quadrature(traj->time_grid(), CollapseDistribution::uniform(0.0, 5.0, 5.005)),
                  CoverageError);
  CHECK_THROWS_AS(collapse_quadrature(traj->time_grid(), CollapseDistribution::delta(1.0, 5.0)), VariantError);
}

TEST_CASE("delta collapse recovers the instantaneous expectation") {
  const auto traj = rabi(10.0, 1000);
  // On a node: exact.
  const SmearReport on = smeared_expectation(*traj, CollapseDistribution::delta(2.0, 10.0), sigma_z());
  CHECK(on.value == Approx(std::cos(2.0)).epsilon(1e-13));
  // Between nodes: linear interpolation error ~ frac (1 - frac) dt^2 / 2.
  const double gap1 =
      std::abs(smeared_expectation(*traj, CollapseDistribution::delta(2.0 + 0.01 / 3.0, 10.0), sigma_z()).value -
               std::cos(2.0 + 0.01 / 3.0));
  const auto fine = rabi(10.0, 2000);
  const double gap2 =
      std::abs(smeared_expectation(*fine, CollapseDistribution::delta(2.0 + 0.01 / 3.0, 10.0), sigma_z()).value -
               std::cos(2.0 + 0.01 / 3.0));
  CHECK(gap1 < 1e-5);
  CHECK(gap1 / gap2 == Approx(4.0).epsilon(0.01));
}

TEST_CASE("linearity of the smeared expectation") {
  const auto traj = rabi(10.0, 1000);
  const auto f = CollapseDistribution::truncated_gaussian(4.0, 1.5, 10.0);
  CMatrix a(2, 2), b(2, 2);
  a << 0.3, cplx(0.1, -0.4), cplx(0.1, 0.4), -1.2;
  b << 2.0, cplx(-0.7, 0.2), cplx(-0.7, -0.2), 0.5;
  const LinearOperator A = LinearOperator::dense(a, true), B = LinearOperator::dense(b, true);
  const LinearOperator C = LinearOperator::dense(0.4 * a - 1.7 * b, true);
  const double lhs = smeared_expectation(*traj, f, C).value;
  const double rhs = 0.4 * smeared_expectation(*traj, f, A).value - 1.7 * smeared_expectation(*traj, f, B).value;
  CHECK(lhs == Approx(rhs).epsilon(1e-13));
}

TEST_CASE("omega is a density operator and reproduces smeared expectations") {
  const auto traj = rabi(10.0, 1000);
  for (const auto& f : {CollapseDistribution::uniform(0.0, 10.0, 10.0), CollapseDistribution::exponential(0.5, 10.0),
                        CollapseDistribution::delta(3.3, 10.0)}) {
    const SmearedState omega = build_omega(traj, f);
    const std::vector<LinearOperator> ops{sigma_z(), LinearOperator::dense(pauli_x(), true)};
    const OmegaCheckReport r = omega_trace_checks(omega, ops);
    CHECK(std::abs(*r.trace - 1.0) < 1e-8);
    CHECK(*r.min_eigenvalue > -1e-9);
    CHECK(*r.hermiticity_residual < 1e-10);
    for (const auto& c : r.operators) CHECK(std::abs(c.difference) < 1e-8);
  }
  CHECK(build_omega(traj, CollapseDistribution::delta(3.3, 10.0)).quadrature_rule() == "delta-interpolation");
  CHECK(build_omega(traj, CollapseDistribution::uniform(0.0, 10.0, 10.0)).quadrature_rule() == "composite-simpson");
}

TEST_CASE("delta omega on a node is a pure projector") {
  const auto traj = rabi(10.0, 1000);
  const OmegaCheckReport r = omega_trace_checks(build_omega(traj, CollapseDistribution::delta(3.0, 10.0)));
  CHECK(*r.purity == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(*r.second_eigenvalue) < 1e-12);
  // A spread of collapse times mixes the state.
  const OmegaCheckReport m = omega_trace_checks(build_omega(traj, CollapseDistribution::uniform(0.0, 10.0, 10.0)));
  CHECK(*m.purity < 0.9);
}

TEST_CASE("dense cap and matrix-free fallback") {
  const auto traj = rabi(1.0, 10);
  CHECK_THROWS_AS(build_omega(traj, CollapseDistribution::uniform(0.0, 1.0, 1.0), {.dense_cap = 1}), ResourceError);
  const SmearedState mf = build_omega(traj, CollapseDistribution::uniform(0.0, 1.0, 1.0),
                                      {.dense_cap = 1, .allow_matrix_free = true});
  CHECK(mf.form() == SmearedState::Form::MatrixFree);
  CHECK_THROWS(mf.matrix());
  CHECK(mf.trace_with(sigma_z()) ==
        Approx(smeared_expectation(*traj, CollapseDistribution::uniform(0.0, 1.0, 1.0), sigma_z()).value));
}

TEST_CASE("stationary state: pure omega and zero energy spread") {
  const auto traj = harmonic_ground(10.0, 400);
  for (const auto& f : {CollapseDistribution::uniform(0.0, 10.0, 10.0), CollapseDistribution::exponential(0.5, 10.0)}) {
    const OmegaCheckReport r = omega_trace_checks(build_omega(traj, f));
    CHECK(*r.purity == Approx(1.0).epsilon(1e-8));
    const EnergyTimeReport e = energy_time_report(*traj, f);
    CHECK(e.delta_e < 1e-8);
    CHECK(e.mean_energy == Approx(0.5).epsilon(1e-8));
    CHECK_FALSE(e.satisfies_bound);
    CHECK(e.delta_t == Approx(std::sqrt(f.variance())));
  }
}

TEST_CASE("energy-time report for a delta has zero time spread") {
  const auto traj = rabi(10.0, 100);
  const EnergyTimeReport e = energy_time_report(*traj, CollapseDistribution::delta(1.0, 10.0));
  CHECK(e.delta_t == 0.0);
  CHECK(e.product == 0.0);
  CHECK(e.delta_e == Approx(0.5));
  CHECK(e.hbar_half == 0.5);
}

TEST_CASE("griffiths time of the rabi qubit") {
  const auto traj = rabi(4.0, 4000);
  const GriffithsTime g = griffiths_delta_t(*traj, sigma_z(), std::numbers::pi / 2.0 - std::fmod(std::numbers::pi / 2.0, 0.001));
  CHECK(g.delta_t == Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(griffiths_delta_t(*traj, sigma_z(), 0.0), DomainError);
  const auto ground = harmonic_ground(1.0, 10);
  CHECK(std::isinf(griffiths_delta_t(*ground, position_operator(grid_of(ground->representation())), 0.5).delta_t));
}

TEST_CASE("mean collapse time") {
  CHECK(smeared_time_expectation(CollapseDistribution::uniform(1.0, 3.0, 5.0)) == Approx(2.0));
}
