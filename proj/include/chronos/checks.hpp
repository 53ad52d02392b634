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

#ifndef CHRONOS_CHECKS_HPP
#define CHRONOS_CHECKS_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "chronos/scenario.hpp"
#include "chronos/time_operator.hpp"

namespace chronos {

struct CheckResult {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

/// Default tolerance per check key; overridable by name.
std::map<std::string, double> default_tolerances();

struct DeltaRecovery {
  double t_prime;
  double gap;          ///< |<<A>>_delta - <A>(t')| at the scenario's dt
  double refined_gap;  ///< same at dt / 2
  double ratio;        ///< gap / refined_gap (+inf when refined_gap is 0)
};

/// The initial state propagated straight to t by spectral decomposition.
StateVector exact_state_at(const Scenario& sc, double t);

/// Compares the delta-smeared expectation at t' against <A> in `exact`
/// (the state at t'). `traj` and `refined_traj` are the scenario run at dt
/// and dt / 2.
DeltaRecovery delta_recovery(const Trajectory& traj, const Trajectory& refined_traj, const StateVector& exact,
                             const LinearOperator& op, double t_prime);

/// Delta location used by the suite: one third of the way into the time cell
/// near 0.618 t_max, so that halving dt keeps the interpolation weights
/// frac (1 - frac) unchanged.
double delta_probe_time(const Scenario& sc);

struct CommutatorOrder {
  std::vector<std::size_t> n_steps;
  std::vector<double> residuals;
  std::vector<double> ratios;  ///< residual[i] / residual[i + 1]
  cplx constant;               ///< at the finest grid
};

/// commutator_residual of a Gaussian-in-t test function on [0, t_max] over
/// successive halvings of dt, starting from `n0` steps.
CommutatorOrder commutator_order(double t_max, std::size_t dimension, double weight, double hbar,
                                 std::size_t n0 = 250, std::size_t refinements = 3);

/// Full invariant suite for one scenario: Omega trace, positivity and
/// Hermiticity, the Tr(Omega A) dual path, delta recovery, joint-density
/// normalization and Bayes symmetry (grid systems), commutator order and the
/// scenario's reference values.
std::vector<CheckResult> run_invariant_suite(const Scenario& sc,
                                             const std::map<std::string, double>& tolerances);

/// "CHECK <name> PASS|FAIL <value> <tolerance>"
void print_check(std::ostream& out, const CheckResult& r);

}  // namespace chronos

#endif  // CHRONOS_CHECKS_HPP
