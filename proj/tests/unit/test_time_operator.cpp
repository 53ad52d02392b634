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

#include <doctest.h>

#include "chronos/checks.hpp"
#include "chronos/errors.hpp"
#include "chronos/hamiltonian.hpp"
#include "chronos/quadrature.hpp"
#include "chronos/time_operator.hpp"

using namespace chronos;
using doctest::Approx;

TEST_CASE("T multiplies by the time label") {
  const TimeGrid g(1.0, 4);
  const auto sf = SpacetimeFunction::from_function(g, 2, 1.0, [](double, std::size_t i) { return cplx(1.0 + i); });
  const SpacetimeFunction t = apply_T(sf);
  CHECK(t.values(2, 1) == cplx(0.5 * 2.0));
  CHECK(t.values(4, 0) == cplx(1.0));
  CHECK(t.n_nodes() == 5);
  CHECK(t.dimension() == 2);
}

TEST_CASE("generator differentiates in time") {
  const TimeGrid g(2.0, 200);
  // i hbar d/dt of e^{-i w t} is w e^{-i w t}.
  const double w = 1.7;
  const auto sf = SpacetimeFunction::from_function(g, 1, 1.0, [&](double t, std::size_t) { return std::polar(1.0, -w * t); });
  const SpacetimeFunction gsf = apply_time_generator(sf);
  for (std::size_t k = 0; k <= 200; k += 50) {
    CHECK(std::abs(gsf.values(k, 0) - w * sf.values(k, 0)) < 1e-3);
  }
  CHECK_THROWS_AS(apply_time_generator(SpacetimeFunction::from_function(TimeGrid(1.0, 1), 1, 1.0,
                                                                         [](double, std::size_t) { return cplx(1); })),
                  DomainError);
}

TEST_CASE("commutator converges at second order with constant -i hbar") {
  const CommutatorOrder c = commutator_order(10.0, 4, 1.0, 1.0);
  REQUIRE(c.ratios.size() == 3);
  for (double r : c.ratios) CHECK(r == Approx(4.0).epsilon(0.05));
  CHECK(std::abs(c.constant - cplx(0.0, -1.0)) < 1e-4);
  const CommutatorOrder h2 = commutator_order(10.0, 4, 1.0, 2.0);
  CHECK(std::abs(std::abs(h2.constant) - 2.0) < 2e-4);
}

TEST_CASE("commutator on a trajectory") {
  const LinearOperator h = LinearOperator::dense(0.5 * pauli_x(), true);
  const Trajectory traj = evolve_exact(StateVector::basis(2, 0), h, TimeGrid(5.0, 2000));
  const CommutatorReport r = commutator_residual(SpacetimeFunction::from_trajectory(traj));
  CHECK(r.residual < 1e-4);
  CHECK(std::abs(r.measured_constant - cplx(0.0, -1.0)) < 1e-6);
}

TEST_CASE("generator is symmetric only with a periodic closure") {
  const TimeGrid g(1.0, 16);
  const RVector w = RVector::Constant(17, g.dt());
  const HermiticityProbe periodic = hermiticity_probe(g, w, TimeClosure::Periodic);
  CHECK(periodic.t_asymmetry < 1e-12);
  CHECK(periodic.g_asymmetry < 1e-12);

  const HermiticityProbe one_sided = hermiticity_probe(g, simpson_weights(16, g.dt()), TimeClosure::OneSided);
  CHECK(one_sided.t_asymmetry < 1e-12);
  CHECK(one_sided.g_asymmetry > 0.1);
  CHECK(one_sided.g_row_asymmetry(0) > 0.1);
  CHECK(one_sided.g_row_asymmetry(16) > 0.1);
}

TEST_CASE("time label expectations") {
  const TimeGrid g(2.0, 20);
  const auto sf = SpacetimeFunction::from_function(g, 3, 0.5, [](double, std::size_t i) { return cplx(i == 0 ? 2.0 : 0.0); });
  const RVector t = time_label_expectations(sf);
  CHECK(t.size() == 21);
  CHECK(t(10) == Approx(1.0));
}

TEST_CASE("generator agrees with the hamiltonian on a solution") {
  const SpatialGrid grid(-12.0, 12.0, 128);
  const LinearOperator h = build_hamiltonian(grid, [](double x) { return 0.5 * x * x; });
  const Trajectory coarse = evolve_exact(gaussian_packet(grid, 1.0, 1.0 / std::sqrt(2.0), 0.0), h, TimeGrid(1.0, 200));
  const Trajectory fine = evolve_exact(gaussian_packet(grid, 1.0, 1.0 / std::sqrt(2.0), 0.0), h, TimeGrid(1.0, 400));
  const GeneratorConsistency a = generator_vs_hamiltonian(coarse);
  const GeneratorConsistency b = generator_vs_hamiltonian(fine);
  CHECK(a.interior < 1e-3);
  CHECK(a.interior / b.interior == Approx(4.0).epsilon(0.05));
}
