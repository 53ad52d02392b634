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
#include <sstream>

#include <doctest.h>

#include "chronos/checks.hpp"
#include "chronos/observables.hpp"
#include "chronos/scenario.hpp"

using namespace chronos;
using doctest::Approx;

TEST_CASE("every builtin passes its invariant suite") {
  for (const auto& sc : builtin_scenarios()) {
    CAPTURE(sc.name);
    const auto results = run_invariant_suite(sc, default_tolerances());
    CHECK_FALSE(results.empty());
    for (const auto& r : results) {
      CAPTURE(r.name);
      CAPTURE(r.value);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("delta probe sits a third of a cell past a node") {
  const Scenario sc = find_builtin("rabi-qubit/delta");
  const double dt = sc.t_max / static_cast<double>(sc.n_steps);
  const double t = delta_probe_time(sc);
  const double frac = t / dt - std::floor(t / dt);
  CHECK(frac == Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("delta recovery error shrinks fourfold on refinement") {
  const Scenario sc = find_builtin("rabi-qubit/delta");
  const double t = delta_probe_time(sc);
  const Trajectory coarse = run_trajectory(sc);
  const Trajectory fine = run_trajectory(refined(sc, 2));
  const LinearOperator z = make_observable("sigma_z", scenario_hamiltonian(sc), sc.constants);
  const DeltaRecovery d = delta_recovery(coarse, fine, exact_state_at(sc, t), z, t);
  CHECK(d.gap < 1e-6);
  CHECK(d.ratio == Approx(4.0).epsilon(0.05));
}

TEST_CASE("tightened tolerances make checks fail") {
  auto tol = default_tolerances();
  tol["omega_trace"] = 0.0;
  tol["omega_hermiticity"] = -1.0;
  const auto results = run_invariant_suite(find_builtin("free-gaussian/uniform"), tol);
  bool saw_failure = false;
  for (const auto& r : results) saw_failure |= !r.pass;
  CHECK(saw_failure);
}

TEST_CASE("check line format") {
  std::ostringstream out;
  print_check(out, {"bayes", 0.25, 1e-10, true});
  CHECK(out.str() == "CHECK bayes PASS 0.25 1e-10\n");
}
