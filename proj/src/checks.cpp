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

#include "chronos/checks.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/observables.hpp"
#include "chronos/smear.hpp"
#include "chronos/spacetime.hpp"

namespace chronos {

namespace {

constexpr double kExactFloor = 1e-11;

double tol(const std::map<std::string, double>& t, const std::string& key) {
  const auto it = t.find(key);
  if (it == t.end()) throw DomainError("no tolerance for check '" + key + "'");
  return it->second;
}

CheckResult at_most(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance};
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {
      {"omega_trace", 1e-8},
      {"omega_min_eigenvalue", 1e-9},
      {"omega_hermiticity", 1e-10},
      {"dual_path", 1e-8},
      {"delta_recovery", 1e-6},
      {"delta_refinement", 3.0},
      {"joint_mass", 1e-6},
      {"slice_marginal", 1e-8},
      {"bayes", 1e-10},
      {"commutator_order", 0.5},
      {"commutator_constant", 1e-4},
  };
}

StateVector exact_state_at(const Scenario& sc, double t) {
  const StateVector psi0 = scenario_initial_state(sc);
  if (t == 0.0) return psi0;
  const Trajectory tr = evolve_exact(psi0, scenario_hamiltonian(sc), TimeGrid(t, 1), sc.constants.hbar);
  return tr.state(1);
}

DeltaRecovery delta_recovery(const Trajectory& traj, const Trajectory& refined_traj, const StateVector& exact,
                             const LinearOperator& op, double t_prime) {
  const double truth = expectation(op, exact);
  const auto gap = [&](const Trajectory& tr) {
    const auto d = CollapseDistribution::delta(t_prime, tr.time_grid().t_max());
    return std::abs(smeared_expectation(tr, d, op).value - truth);
  };
  DeltaRecovery r{t_prime, gap(traj), gap(refined_traj), 0.0};
  r.ratio = r.refined_gap > 0.0 ? r.gap / r.refined_gap : std::numeric_limits<double>::infinity();
  return r;
}

double delta_probe_time(const Scenario& sc) {
  const double dt = sc.t_max / static_cast<double>(sc.n_steps);
  return (std::round(0.61803 * static_cast<double>(sc.n_steps)) + 1.0 / 3.0) * dt;
}

CommutatorOrder commutator_order(double t_max, std::size_t dimension, double weight, double hbar,
                                 std::size_t n0, std::size_t refinements) {
  CommutatorOrder out;
  const double centre = 0.5 * t_max;
  const double width = t_max / 6.0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dimension) * weight);
  for (std::size_t r = 0; r <= refinements; ++r) {
    const std::size_t n = n0 << r;
    const TimeGrid grid(t_max, n);
    const auto sf = SpacetimeFunction::from_function(grid, dimension, weight, [&](double t, std::size_t i) {
      const double s = (t - centre) / width;
      const double phase = 0.3 * static_cast<double>(i % 7);
      return norm * std::exp(-0.5 * s * s) * cplx(std::cos(phase), std::sin(phase));
    });
    const CommutatorReport rep = commutator_residual(sf, hbar);
    out.n_steps.push_back(n);
    out.residuals.push_back(rep.residual);
    out.constant = rep.measured_constant;
  }
  for (std::size_t i = 0; i + 1 < out.residuals.size(); ++i) {
    out.ratios.push_back(out.residuals[i] / out.residuals[i + 1]);
  }
  return out;
}

std::vector<CheckResult> run_invariant_suite(const Scenario& sc, const std::map<std::string, double>& tolerances) {
  auto t = default_tolerances();
  for (const auto& [k, v] : tolerances) t[k] = v;

  std::vector<CheckResult> out;
  const LinearOperator h = scenario_hamiltonian(sc);
  const auto traj = std::make_shared<const Trajectory>(run_trajectory(sc));
  const Trajectory refined_traj = run_trajectory(refined(sc, 2));
  const auto names = suite_observables(traj->representation());
  std::vector<LinearOperator> ops;
  for (const auto& n : names) ops.push_back(make_observable(n, h, sc.constants));

  // Omega contract and the dual path.
  const SmearedState omega = build_omega(traj, sc.collapse);
  const OmegaCheckReport oc = omega_trace_checks(omega, ops);
  if (oc.trace) out.push_back(at_most("omega_trace", std::abs(*oc.trace - 1.0), tol(t, "omega_trace")));
  if (oc.min_eigenvalue) {
    out.push_back(at_most("omega_min_eigenvalue", std::max(0.0, -*oc.min_eigenvalue), tol(t, "omega_min_eigenvalue")));
  }
  if (oc.hermiticity_residual) {
    out.push_back(at_most("omega_hermiticity", *oc.hermiticity_residual, tol(t, "omega_hermiticity")));
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    out.push_back(at_most("dual_path:" + names[i], std::abs(oc.operators[i].difference), tol(t, "dual_path")));
  }

  // Delta recovery.
  const double t_prime = delta_probe_time(sc);
  const StateVector exact = exact_state_at(sc, t_prime);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const DeltaRecovery d = delta_recovery(*traj, refined_traj, exact, ops[i], t_prime);
    out.push_back(at_most("delta_recovery:" + names[i], d.gap, tol(t, "delta_recovery")));
    const bool converged = d.gap < kExactFloor || d.ratio >= tol(t, "delta_refinement");
    out.push_back({"delta_refinement:" + names[i], d.ratio, tol(t, "delta_refinement"), converged});
  }

  // Joint density (grid systems with a continuous f).
  if (is_grid(traj->representation()) && !sc.collapse.is_delta()) {
    const JointDensity joint = joint_density(*traj, sc.collapse);
    out.push_back(at_most("joint_mass", std::abs(joint.total_mass() - 1.0), tol(t, "joint_mass")));
    const RVector marginal = joint.time_marginal();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < marginal.size(); ++k) {
      worst = std::max(worst, std::abs(marginal[k] - joint.collapse_density()[k]));
    }
    out.push_back(at_most("slice_marginal", worst, tol(t, "slice_marginal")));
    out.push_back(at_most("bayes", bayes_consistency(joint).max_residual(), tol(t, "bayes")));
  }

  // Commutator order on a smooth test function shaped like this scenario.
  const CommutatorOrder co =
      commutator_order(sc.t_max, traj->dimension(), traj->weight(), sc.constants.hbar);
  double worst_ratio_gap = 0.0;
  for (double r : co.ratios) worst_ratio_gap = std::max(worst_ratio_gap, std::abs(r - 4.0));
  out.push_back(at_most("commutator_order", worst_ratio_gap, tol(t, "commutator_order")));
  out.push_back(at_most("commutator_constant", std::abs(std::abs(co.constant) - sc.constants.hbar),
                        tol(t, "commutator_constant")));

  // Reference values carried by the scenario.
  for (const auto& ref : sc.references) {
    const LinearOperator op = make_observable(ref.observable, h, sc.constants);
    const double v = smeared_expectation(*traj, sc.collapse, op).value;
    const std::string key = "reference:" + ref.observable;
    const auto it = t.find(key);
    out.push_back(at_most(key, std::abs(v - ref.value), it == t.end() ? ref.tolerance : it->second));
  }
  return out;
}

void print_check(std::ostream& out, const CheckResult& r) {
  out << "CHECK " << r.name << ' ' << (r.pass ? "PASS" : "FAIL") << ' ' << format_double(r.value) << ' '
      << format_double(r.tolerance) << '\n';
}

}  // namespace chronos
