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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "chronos/checks.hpp"
#include "chronos/csv.hpp"
#include "chronos/goodness_of_fit.hpp"
#include "chronos/observables.hpp"
#include "chronos/sampler.hpp"
#include "chronos/scenario.hpp"
#include "chronos/smear.hpp"
#include "chronos/spacetime.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace chronos;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

using Suites = std::map<std::string, std::vector<CheckResult>>;

// Worst value and overall pass over checks whose name starts with `prefix`.
struct Aggregate {
  double worst = 0.0;
  std::size_t count = 0;
  bool pass = true;
  std::string first_failure;
};

Aggregate aggregate(const Suites& suites, const std::string& prefix, bool track_min = false) {
  Aggregate a;
  if (track_min) a.worst = std::numeric_limits<double>::infinity();
  for (const auto& [scenario, results] : suites) {
    for (const auto& r : results) {
      if (!r.name.starts_with(prefix)) continue;
      ++a.count;
      a.worst = track_min ? std::min(a.worst, r.value) : std::max(a.worst, r.value);
      if (!r.pass && a.pass) {
        a.pass = false;
        a.first_failure = scenario + ":" + r.name + "=" + format_double(r.value);
      }
    }
  }
  return a;
}

void note(Verdict& v, const std::string& label, const Aggregate& a) {
  v.detail << ' ' << label << '=' << a.worst << " (n=" << a.count << ")";
  v.require(a.pass && a.count > 0, a.count == 0 ? label + " not evaluated" : a.first_failure);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Verdict delta_recovery_all(const Suites& suites) {
  Verdict v;
  note(v, "max_gap", aggregate(suites, "delta_recovery:"));
  note(v, "min_ratio", aggregate(suites, "delta_refinement:", true));
  std::size_t at_roundoff = 0;
  for (const auto& [scenario, results] : suites) {
    for (const auto& r : results) {
      if (r.name.starts_with("delta_refinement:") && r.pass && r.value < r.tolerance) ++at_roundoff;
    }
  }
  v.detail << " ratio_waived_at_roundoff=" << at_roundoff;
  return v;
}

Verdict omega_contract(const Suites& suites) {
  Verdict v;
  note(v, "trace_err", aggregate(suites, "omega_trace"));
  note(v, "neg_eig", aggregate(suites, "omega_min_eigenvalue"));
  note(v, "herm", aggregate(suites, "omega_hermiticity"));
  note(v, "dual_path", aggregate(suites, "dual_path:"));
  return v;
}

Verdict joint_normalization(const Suites& suites) {
  Verdict v;
  note(v, "mass_err", aggregate(suites, "joint_mass"));
  note(v, "slice_err", aggregate(suites, "slice_marginal"));
  return v;
}

Verdict bayes(const Suites& suites) {
  Verdict v;
  note(v, "residual", aggregate(suites, "bayes"));
  return v;
}

Verdict rabi_oracle() {
  Verdict v;
  const Scenario sc = find_builtin("rabi-qubit/exponential");
  const Trajectory traj = run_trajectory(sc);
  const LinearOperator z = make_observable("sigma_z", scenario_hamiltonian(sc), sc.constants);
  const double smeared = smeared_expectation(traj, sc.collapse, z).value;
  const double quad = oracle::rabi_exponential_by_quadrature(1.0, 1.0, 30.0);
  const double closed = oracle::rabi_exponential_untruncated(1.0, 1.0);
  const double truncation = closed - oracle::kRabiExp1T30;
  v.detail << " smeared=" << format_double(smeared) << " quadrature=" << format_double(quad)
           << " |diff|=" << std::abs(smeared - quad) << " closed_form=" << closed
           << " |oracle-closed+truncation|=" << std::abs(quad - closed + truncation);
  v.require(std::abs(smeared - quad) < 1e-6, "smeared vs quadrature");
  v.require(std::abs(quad + truncation - closed) < 1e-6, "oracle vs closed form");
  return v;
}

Verdict ehrenfest() {
  Verdict v;
  for (const char* dist : {"uniform", "exponential", "truncated_gaussian"}) {
    const Scenario sc = find_builtin(std::string("free-gaussian/") + dist);
    const auto& sys = std::get<GridSystem>(sc.system);
    const auto& g0 = std::get<initial::Gaussian>(sys.initial);
    const Trajectory traj = run_trajectory(sc);
    const LinearOperator x = make_observable("x", scenario_hamiltonian(sc), sc.constants);
    const double smeared = smeared_expectation(traj, sc.collapse, x).value;
    const double predicted = g0.x0 + g0.p0 / sc.constants.mass * sc.collapse.moment(1);
    const double rel = std::abs(smeared - predicted) / std::abs(predicted);
    v.detail << ' ' << dist << "_rel=" << rel;
    v.require(rel < 1e-5, dist);
  }
  return v;
}

Verdict stationary() {
  Verdict v;
  double worst_purity = 0.0, worst_de = 0.0;
  for (const char* dist : {"delta", "uniform", "exponential", "truncated_gaussian"}) {
    const Scenario sc = find_builtin(std::string("harmonic-ground/") + dist);
    const auto traj = std::make_shared<const Trajectory>(run_trajectory(sc));
    const OmegaCheckReport r = omega_trace_checks(build_omega(traj, sc.collapse));
    const EnergyTimeReport e = energy_time_report(*traj, sc.collapse);
    const double purity_err = std::abs(r.purity.value_or(0.0) - 1.0);
    worst_purity = std::max(worst_purity, purity_err);
    worst_de = std::max(worst_de, e.delta_e);
    v.require(purity_err < 1e-8, std::string(dist) + " purity");
    v.require(e.delta_e < 1e-8, std::string(dist) + " delta_e");
    v.require(!e.satisfies_bound, std::string(dist) + " flag not raised");
  }
  v.detail << " purity_err=" << worst_purity << " delta_e=" << worst_de << " flag=raised";
  return v;
}

Verdict commutator(const Suites& suites) {
  Verdict v;
  note(v, "max|ratio-4|", aggregate(suites, "commutator_order"));
  note(v, "||c|-hbar|", aggregate(suites, "commutator_constant"));
  const CommutatorOrder co = commutator_order(30.0, 2, 1.0, 1.0);
  v.detail << " ratios=";
  for (double r : co.ratios) {
    v.detail << r << ';';
    v.require(r >= 3.5 && r <= 4.5, "ratio out of [3.5, 4.5]");
  }
  v.detail << " c=" << co.constant.real() << (co.constant.imag() < 0 ? "" : "+") << co.constant.imag() << "i";
  v.require(std::abs(std::abs(co.constant) - 1.0) < 1e-4, "constant");
  return v;
}

Verdict sampler() {
  Verdict v;
  const Scenario sc = find_builtin("free-gaussian/uniform");
  const Trajectory traj = run_trajectory(sc);
  const std::size_t n = 100000;
  const RandomStream seed(20261016);
  const auto records = sample_measurements(traj, sc.collapse, n, seed);

  const JointDensity joint = joint_density(traj, sc.collapse);
  const HistogramAxes axes = aligned_axes(joint, 20, 32);
  const JointHistogram hist = empirical_joint_histogram(records, axes);
  const RMatrix expected = expected_bin_masses(joint, axes);
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(expected.size()));
  for (Eigen::Index i = 0; i < expected.rows(); ++i) {
    for (Eigen::Index j = 0; j < expected.cols(); ++j) probs.push_back(expected(i, j));
  }
  const ChiSquareResult chi = chi_square_test(hist.counts(), probs, 0.01);
  v.detail << " chi2=" << chi.statistic << " dof=" << chi.dof << " crit1%=" << chi.critical_value
           << " p=" << chi.p_value;
  v.require(!chi.rejected(), "chi-square rejected");

  double mean = 0.0, sq = 0.0;
  for (const auto& r : records) {
    mean += r.outcome;
    sq += r.outcome * r.outcome;
  }
  mean /= static_cast<double>(n);
  const double se = std::sqrt((sq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
  const LinearOperator x = make_observable("x", scenario_hamiltonian(sc), sc.constants);
  const double target = smeared_expectation(traj, sc.collapse, x).value;
  const double z = std::abs(mean - target) / se;
  v.detail << " mean=" << mean << " quad=" << target << " z=" << z;
  v.require(z < 4.0, "mean outside 4 SE");

  const fs::path dir = fs::temp_directory_path() / "chronos_acceptance";
  fs::create_directories(dir);
  write_records_csv(records, dir / "a.csv");
  ::setenv("CHRONOS_THREADS", "1", 1);
  write_records_csv(sample_measurements(traj, sc.collapse, n, seed), dir / "b.csv");
  ::unsetenv("CHRONOS_THREADS");
  const bool identical = slurp(dir / "a.csv") == slurp(dir / "b.csv");
  v.detail << " byte_identical=" << (identical ? "yes" : "no");
  v.require(identical, "records differ");
  return v;
}

Verdict performance() {
  Verdict v;
  Scenario sc = find_builtin("free-gaussian/uniform");
  std::get<GridSystem>(sc.system).n = 1024;
  sc.n_steps = 10000;
  sc.references.clear();

  const auto start = std::chrono::steady_clock::now();
  const auto traj = std::make_shared<const Trajectory>(run_trajectory(sc));
  const LinearOperator x = make_observable("x", scenario_hamiltonian(sc), sc.constants);
  const double smeared = smeared_expectation(*traj, sc.collapse, x).value;
  const JointDensity joint = joint_density(*traj, sc.collapse);
  const double pipeline = seconds_since(start);
  v.detail << " evolve+smear+joint(1024x1e4)=" << pipeline << "s";
  v.require(std::isfinite(smeared) && std::abs(joint.total_mass() - 1.0) < 1e-6, "pipeline output");
  v.require(pipeline < 10.0, "pipeline over 10 s");

  const Scenario small = find_builtin("free-gaussian/uniform");
  const auto traj256 = std::make_shared<const Trajectory>(run_trajectory(small));
  const auto t0 = std::chrono::steady_clock::now();
  const SmearedState omega = build_omega(traj256, small.collapse);
  const double omega_s = seconds_since(t0);
  v.detail << " omega(dim=" << omega.matrix().rows() << ")=" << omega_s << "s";
  v.require(omega.matrix().rows() == 256, "dimension");
  v.require(omega_s < 2.0, "omega over 2 s");
  return v;
}

}  // namespace

int main() {
  Suites suites;
  for (const auto& sc : builtin_scenarios()) suites[sc.name] = run_invariant_suite(sc, default_tolerances());

  struct Entry {
    int id;
    const char* name;
    Verdict (*run)(const Suites&);
  };
  const std::vector<Entry> entries{
      {1, "delta_recovery", delta_recovery_all},
      {2, "omega_contract", omega_contract},
      {3, "joint_normalization", joint_normalization},
      {4, "bayes_symmetry", bayes},
      {5, "rabi_exponential_oracle", [](const Suites&) { return rabi_oracle(); }},
      {6, "ehrenfest_smearing", [](const Suites&) { return ehrenfest(); }},
      {7, "stationary_state", [](const Suites&) { return stationary(); }},
      {8, "commutator_order", commutator},
      {9, "sampler_fidelity", [](const Suites&) { return sampler(); }},
      {10, "performance", [](const Suites&) { return performance(); }},
  };

  int failures = 0;
  for (const auto& e : entries) {
    Verdict v;
    try {
      v = e.run(suites);
    } catch (const std::exception& ex) {
      v.require(false, std::string("exception: ") + ex.what());
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " AC" << e.id << ' ' << e.name << ':' << v.detail.str() << std::endl;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
