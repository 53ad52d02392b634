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

#include <string>

#include <doctest.h>

#include "chronos/errors.hpp"
#include "chronos/observables.hpp"

using namespace chronos;
using doctest::Approx;

TEST_CASE("grid observables") {
  const SpatialGrid g(-10.0, 10.0, 64);
  const LinearOperator h = build_hamiltonian(g, [](double) { return 0.0; });
  const StateVector psi = gaussian_packet(g, 1.5, 1.0, -0.5);
  CHECK(expectation(make_observable("x", h, {}), psi) == Approx(1.5).epsilon(1e-8));
  CHECK(expectation(make_observable("p", h, {}), psi) == Approx(-0.5).epsilon(1e-8));
  CHECK(expectation(make_observable("H", h, {}), psi) == Approx(expectation(h, psi)));
  const double proj = expectation(make_observable("projector:32", h, {}), psi);
  CHECK(proj == Approx(std::norm(psi.amplitudes()(32)) * g.dx()));
  CHECK(suite_observables(Representation{g}) ==
        std::vector<std::string>{"H", "x", "p", "projector:32", "projector:33"});
}

TEST_CASE("basis observables") {
  CMatrix hm = CMatrix::Zero(4, 4);
  const LinearOperator h = LinearOperator::dense(hm, true);
  const StateVector e1 = StateVector::basis(4, 1);
  CHECK(expectation(make_observable("sigma_z", h, {}), e1) == Approx(1.0));
  CHECK(expectation(make_observable("sigma_z", h, {}), StateVector::basis(4, 2)) == Approx(-1.0));
  CHECK(expectation(make_observable("projector:1", h, {}), e1) == Approx(1.0));
  CHECK(expectation(make_observable("projector:0", h, {}), e1) == Approx(0.0));
  CHECK(suite_observables(Representation{FiniteDim{4}}) ==
        std::vector<std::string>{"H", "sigma_z", "projector:0", "projector:1"});
  CHECK(suite_observables(Representation{FiniteDim{3}}) == std::vector<std::string>{"H", "projector:0", "projector:1"});
}

TEST_CASE("observable errors") {
  const LinearOperator h = LinearOperator::dense(CMatrix::Zero(3, 3), true);
  CHECK_THROWS_AS(make_observable("x", h, {}), RepresentationError);
  CHECK_THROWS_AS(make_observable("sigma_z", h, {}), RepresentationError);
  CHECK_THROWS_AS(make_observable("projector:3", h, {}), RepresentationError);
  try {
    make_observable("spin", h, {});
    FAIL("expected an unsupported operator error");
  } catch (const UnsupportedOperatorError& e) {
    CHECK(std::string(e.what()).find("sigma_z") != std::string::npos);
  }
  CHECK_THROWS_AS(make_observable("projector:abc", h, {}), UnsupportedOperatorError);
}
