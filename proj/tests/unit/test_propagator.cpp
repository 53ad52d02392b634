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
#include <numbers>

#include <doctest.h>

#include "chronos/errors.hpp"
#include "chronos/hamiltonian.hpp"
#include "chronos/propagator.hpp"

using namespace chronos;

TEST_CASE("time grid nodes") {
  const TimeGrid tg(2.0, 8);
  CHECK(tg.n_nodes() == 9);
  CHECK(tg.t(8) == 2.0);
  CHECK(tg.dt() == 0.25);
  CHECK(tg.node_index(0.75).value() == 3);
  CHECK_FALSE(tg.node_index(0.8).has_value());
  CHECK(tg.nearest_node(0.8) == 3);
  CHECK(tg.nearest_node(5.0) == 8);
  CHECK_THROWS_AS(TimeGrid(0.0, 4), DomainError);
  CHECK_THROWS_AS(TimeGrid(1.0, 0), DomainError);
}

TEST_CASE("free packet: linear drift and exact norm") {
  const SpatialGrid g(-20.0, 20.0, 256);
  const LinearOperator h = build_hamiltonian(g, [](double) { return 0.0; });
  const StateVector psi0 = gaussian_packet(g, 0.0, 1.0, 2.0);
  const Trajectory traj = evolve_split_operator(psi0, h, TimeGrid(2.0, 200));
  CHECK(traj.max_norm_deviation() < 1e-12);
  const RVector x = expectation_series(traj, position_operator(g));
  for (std::size_t k = 0; k < traj.n_nodes(); k += 20) {
    CHECK(x[static_cast<Eigen::Index>(k)] == doctest::Approx(2.0 * traj.time_grid().t(k)).epsilon(1e-9));
  }
  // Packet width grows as sqrt(1 + t^2 / 4) for sigma = 1.
  const double s = standard_deviation(position_operator(g), traj.state(200));
  CHECK(s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("split operator agrees with exact propagation") {
  const SpatialGrid g(-12.0, 12.0, 128);
  const LinearOperator h = build_hamiltonian(g, [](double x) { return 0.5 * x * x; });
  const StateVector psi0 = gaussian_packet(g, 2.0, 1.0 / std::numbers::sqrt2, 0.0);
  const TimeGrid tg(std::numbers::pi, 2000);
  const Trajectory a = evolve_split_operator(psi0, h, tg);
  const Trajectory b = evolve_exact(psi0, h, tg);
  const double diff = (a.slices().col(2000) - b.slices().col(2000)).norm() * std::sqrt(g.dx());
  CHECK(diff < 1e-5);
  // Coherent state: <x>(t) = 2 cos t.
  CHECK(expectation(position_operator(g), b.state(2000)) == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(expectation(position_operator(g), a.state(1000)) == doctest::Approx(0.0).epsilon(1e-6));

  // Second-order convergence of the splitting.
  const Trajectory c = evolve_split_operator(psi0, h, TimeGrid(std::numbers::pi, 4000));
  const double diff2 = (c.slices().col(4000) - b.slices().col(2000)).norm() * std::sqrt(g.dx());
  CHECK(diff / diff2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("energy is conserved") {
  const SpatialGrid g(-12.0, 12.0, 128);
  const LinearOperator h = build_hamiltonian(g, [](double x) { return 0.5 * x * x; });
  const StateVector psi0 = gaussian_packet(g, 1.0, 0.9, 0.5);
  const RVector e = energy_series(evolve_exact(psi0, h, TimeGrid(5.0, 100)));
  CHECK((e.array() - e[0]).abs().maxCoeff() < 1e-10);
}

TEST_CASE("finite dimensional rabi oscillation") {
  const LinearOperator h = LinearOperator::dense(0.5 * pauli_x(), true);
  const Trajectory traj = evolve_exact(StateVector::basis(2, 0), h, TimeGrid(10.0, 1000));
  const RVector z = expectation_series(traj, LinearOperator::dense(pauli_z(), true));
  for (std::size_t k = 0; k <= 1000; k += 50) {
    CHECK(z[static_cast<Eigen::Index>(k)] == doctest::Approx(std::cos(traj.time_grid().t(k))).epsilon(1e-12));
  }
}

TEST_CASE("schrodinger residual is second order") {
  const LinearOperator h = LinearOperator::dense(0.5 * pauli_x(), true);
  const double r1 = schrodinger_residual(evolve_exact(StateVector::basis(2, 0), h, TimeGrid(4.0, 100)));
  const double r2 = schrodinger_residual(evolve_exact(StateVector::basis(2, 0), h, TimeGrid(4.0, 200)));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.01));
  CHECK_THROWS_AS(schrodinger_residual(evolve_exact(StateVector::basis(2, 0), h, TimeGrid(4.0, 1))), DomainError);
}

TEST_CASE("propagator preconditions") {
  const SpatialGrid g(-5.0, 5.0, 32);
  const LinearOperator h = build_hamiltonian(g, [](double) { return 0.0; });
  const StateVector unnormalized(g, CVector::Ones(32));
  CHECK_THROWS_AS(evolve_split_operator(unnormalized, h, TimeGrid(1.0, 10)), DomainError);
  const LinearOperator q = LinearOperator::dense(pauli_z(), true);
  CHECK_THROWS_AS(evolve_split_operator(StateVector::basis(2, 0), q, TimeGrid(1.0, 10)), RepresentationError);
  CHECK_THROWS_AS(evolve_exact(gaussian_packet(g, 0.0, 1.0, 0.0), q, TimeGrid(1.0, 10)), RepresentationError);
}

TEST_CASE("stepper is reversible") {
  const SpatialGrid g(-12.0, 12.0, 128);
  const LinearOperator h = build_hamiltonian(g, [](double x) { return 0.1 * x * x * x * x; });
  const StateVector psi0 = gaussian_packet(g, 1.0, 0.7, 1.0);
  const StateVector fwd = SplitOperatorStepper(h, 0.01).advance(psi0, 300);
  const StateVector back = SplitOperatorStepper(h, -0.01).advance(fwd, 300);
  CHECK((back.amplitudes() - psi0.amplitudes()).norm() * std::sqrt(g.dx()) < 1e-12);
}
