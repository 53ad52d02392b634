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

#include "chronos/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "chronos/checks.hpp"
#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/goodness_of_fit.hpp"
#include "chronos/observables.hpp"
#include "chronos/sampler.hpp"
#include "chronos/scenario.hpp"
#include "chronos/smear.hpp"
#include "chronos/spacetime.hpp"

namespace chronos::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string command;
  std::string scenario;
  std::string file;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  long long n = 100000;
  std::string observable;
  std::optional<double> tmax_override;
  std::vector<std::string> tolerances;
  bool gzip = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LoadError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario load(const RunConfig& cfg) {
  try {
    Scenario sc = cfg.file.empty() ? find_builtin(cfg.scenario) : load_scenario(cfg.file);
    if (cfg.tmax_override) sc = with_t_max(sc, *cfg.tmax_override);
    return sc;
  } catch (const ParseError& e) {
    throw LoadError(e.what());
  } catch (const ValidationError& e) {
    throw LoadError(e.what());
  } catch (const DomainError& e) {
    throw LoadError(e.what());
  }
}

std::string csv_name(const RunConfig& cfg, const std::string& stem) {
  return stem + (cfg.gzip ? ".csv.gz" : ".csv");
}

fs::path out_path(const RunConfig& cfg, const std::string& file) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / file;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

void line(std::ostream& out, const std::string& key, double v) { out << key << ' ' << format_double(v) << '\n'; }

std::string default_observable(const Scenario& sc) {
  return std::holds_alternative<GridSystem>(sc.system) ? "x" : "sigma_z";
}

// ------------------------------------------------------------- commands

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const Scenario sc = load(cfg);
  const Trajectory traj = run_trajectory(sc);
  const bool grid = is_grid(traj.representation());
  const TimeGrid& tg = traj.time_grid();

  {
    CsvWriter csv(out_path(cfg, csv_name(cfg, "density")), {"t", grid ? "x" : "index", "density"});
    for (std::size_t k = 0; k < traj.n_nodes(); ++k) {
      const RVector p = traj.slices().col(static_cast<Eigen::Index>(k)).cwiseAbs2();
      for (std::size_t i = 0; i < traj.dimension(); ++i) {
        const double coord = grid ? grid_of(traj.representation()).x(i) : static_cast<double>(i);
        csv.row({tg.t(k), coord, p[static_cast<Eigen::Index>(i)]});
      }
    }
  }

  const RVector energy = energy_series(traj);
  std::vector<std::string> cols{"t", "norm", "energy"};
  std::vector<RVector> extra;
  if (grid) {
    cols.insert(cols.end(), {"x", "p"});
    extra.push_back(expectation_series(traj, make_observable("x", traj.hamiltonian(), sc.constants)));
    extra.push_back(expectation_series(traj, make_observable("p", traj.hamiltonian(), sc.constants)));
  }
  double energy_drift = 0.0;
  {
    CsvWriter csv(out_path(cfg, csv_name(cfg, "expectations")), cols);
    std::vector<double> row;
    for (std::size_t k = 0; k < traj.n_nodes(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      row = {tg.t(k), traj.state(k).norm(), energy[kk]};
      for (const auto& e : extra) row.push_back(e[kk]);
      csv.row(row);
      energy_drift = std::max(energy_drift, std::abs(energy[kk] - energy[0]));
    }
  }

  std::ofstream summary(out_path(cfg, "evolve_summary.txt"), std::ios::trunc);
  for (std::ostream* s : {&out, static_cast<std::ostream*>(&summary)}) {
    *s << "scenario " << sc.name << '\n';
    line(*s, "norm_drift", traj.max_norm_deviation());
    line(*s, "energy_drift", energy_drift);
    line(*s, "schrodinger_residual", schrodinger_residual(traj));
  }
  return kSuccess;
}

int cmd_smear(const RunConfig& cfg, std::ostream& out) {
  const Scenario sc = load(cfg);
  const LinearOperator h = scenario_hamiltonian(sc);
  const std::string name = cfg.observable.empty() ? default_observable(sc) : cfg.observable;
  const LinearOperator op = make_observable(name, h, sc.constants);
  const auto traj = std::make_shared<const Trajectory>(run_trajectory(sc));
  const SmearReport rep = smeared_expectation(*traj, sc.collapse, op);
  write_smear_csv(rep, out_path(cfg, csv_name(cfg, "smear_" + sanitize(name))));

  const SmearedState omega = build_omega(traj, sc.collapse, {.dense_cap = 2048, .allow_matrix_free = true});
  const double tr = omega.trace_with(op);
  out << "scenario " << sc.name << '\n';
  out << "observable " << name << '\n';
  line(out, "quadrature_error", rep.quadrature_error);
  line(out, "trace_omega_a", tr);
  line(out, "dual_path_difference", std::abs(tr - rep.value));
  line(out, "smeared", rep.value);
  return kSuccess;
}

int cmd_joint(const RunConfig& cfg, std::ostream& out) {
  const Scenario sc = load(cfg);
  if (!std::holds_alternative<GridSystem>(sc.system)) {
    throw RepresentationError("scenario '" + sc.name + "' has no spatial grid; the joint density is undefined");
  }
  const Trajectory traj = run_trajectory(sc);
  out << "scenario " << sc.name << '\n';
  if (sc.collapse.is_delta()) {
    const RVector g = delta_spatial_density(traj, sc.collapse);
    CsvWriter csv(out_path(cfg, csv_name(cfg, "spatial_marginal")), {"x", "g"});
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      csv.row({grid_of(traj.representation()).x(static_cast<std::size_t>(i)), g[i]});
    }
    line(out, "total_mass", g.sum() * grid_of(traj.representation()).dx());
    return kSuccess;
  }
  const JointDensity joint = joint_density(traj, sc.collapse);
  write_joint_csv(joint, out_path(cfg, csv_name(cfg, "joint")));
  write_joint_binary(joint, out_path(cfg, "joint.pxt"));
  {
    CsvWriter csv(out_path(cfg, csv_name(cfg, "spatial_marginal")), {"x", "g"});
    for (std::size_t i = 0; i < joint.n_points(); ++i) {
      csv.row({joint.grid().x(i), joint.spatial_marginal()[static_cast<Eigen::Index>(i)]});
    }
  }
  {
    const RVector m = joint.time_marginal();
    CsvWriter csv(out_path(cfg, csv_name(cfg, "time_marginal")), {"t", "f", "marginal"});
    for (Eigen::Index k = 0; k < m.size(); ++k) csv.row({joint.times()[k], joint.collapse_density()[k], m[k]});
  }
  const BayesReport b = bayes_consistency(joint);
  line(out, "total_mass", joint.total_mass());
  line(out, "bayes_residual", b.max_residual());
  out << "bayes_checked_points " << b.checked_points << '\n';
  out << "bayes_skipped_points " << b.skipped_points << '\n';
  return kSuccess;
}

// Probability of each outcome index under "t ~ f, snapped to the nearest node".
RVector snapped_outcome_law(const Trajectory& traj, const CollapseDistribution& dist) {
  const TimeGrid& tg = traj.time_grid();
  const double h = tg.dt();
  RVector law = RVector::Zero(static_cast<Eigen::Index>(traj.dimension()));
  const auto cdf = [&](double t) { return t <= 0.0 ? 0.0 : t >= dist.t_max() ? 1.0 : dist.cdf(t); };
  for (std::size_t k = 0; k < traj.n_nodes(); ++k) {
    const double mass = cdf(tg.t(k) + 0.5 * h) - (k == 0 ? 0.0 : cdf(tg.t(k) - 0.5 * h));
    if (mass > 0.0) law += mass * traj.state(k).probabilities();
  }
  return law / law.sum();
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  const Scenario sc = load(cfg);
  const Trajectory traj = run_trajectory(sc);
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto records = sample_measurements(traj, sc.collapse, n, RandomStream(cfg.seed));
  write_records_csv(records, out_path(cfg, csv_name(cfg, "records")));

  out << "scenario " << sc.name << '\n';
  out << "records " << n << '\n';
  out << "seed " << cfg.seed << '\n';

  if (!sc.collapse.is_delta()) {
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = records[i].t;
    const double d = ks_statistic(times, [&](double t) { return sc.collapse.cdf(t); });
    line(out, "ks_statistic", d);
    line(out, "ks_critical_1pct", ks_critical_value(n, 0.01));
  }

  const bool grid = is_grid(traj.representation());
  if (grid && !sc.collapse.is_delta() && n >= 5) {
    const JointDensity joint = joint_density(traj, sc.collapse);
    const HistogramAxes axes = aligned_axes(joint, 20, 32);
    const JointHistogram hist = empirical_joint_histogram(records, axes);
    const RMatrix expected = expected_bin_masses(joint, axes);
    std::vector<double> probs(static_cast<std::size_t>(expected.size()));
    for (Eigen::Index i = 0; i < expected.rows(); ++i) {
      for (Eigen::Index j = 0; j < expected.cols(); ++j) {
        probs[static_cast<std::size_t>(i * expected.cols() + j)] = expected(i, j);
      }
    }
    const ChiSquareResult chi = chi_square_test(hist.counts(), probs, 0.01);
    line(out, "chi_square", chi.statistic);
    out << "chi_square_dof " << chi.dof << '\n';
    line(out, "chi_square_p_value", chi.p_value);
    line(out, "chi_square_critical_1pct", chi.critical_value);
    line(out, "histogram_rms_deviation", rms_deviation(hist, expected));
  } else {
    const RVector law = snapped_outcome_law(traj, sc.collapse);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(law.size()), 0);
    for (const auto& r : records) ++counts[r.outcome_index];
    std::vector<double> probs(law.data(), law.data() + law.size());
    try {
      const ChiSquareResult chi = chi_square_test(counts, probs, 0.01);
      line(out, "chi_square", chi.statistic);
      out << "chi_square_dof " << chi.dof << '\n';
      line(out, "chi_square_p_value", chi.p_value);
      line(out, "chi_square_critical_1pct", chi.critical_value);
    } catch (const DomainError&) {
      out << "chi_square skipped (fewer than two usable bins)\n";
    }
  }

  double mean = 0.0;
  for (const auto& r : records) mean += r.outcome;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const auto& r : records) var += (r.outcome - mean) * (r.outcome - mean);
  var /= static_cast<double>(n > 1 ? n - 1 : 1);
  line(out, "empirical_mean_outcome", mean);
  line(out, "standard_error", std::sqrt(var / static_cast<double>(n)));
  if (grid) {
    const auto x = make_observable("x", traj.hamiltonian(), sc.constants);
    line(out, "smeared_x", smeared_expectation(traj, sc.collapse, x).value);
  }
  return kSuccess;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  std::map<std::string, double> overrides;
  for (const auto& kv : cfg.tolerances) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tolerance expects KEY=VAL, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw UsageError("--tolerance value for '" + key + "' is not a number");
    }
    const auto defaults = default_tolerances();
    if (!defaults.contains(key) && !key.starts_with("reference:")) {
      std::string known;
      for (const auto& [k, _] : defaults) known += (known.empty() ? "" : ", ") + k;
      throw UsageError("unknown tolerance key '" + key + "' (known: " + known + ", reference:<observable>)");
    }
    overrides[key] = v;
  }
  const Scenario sc = load(cfg);
  out << "scenario " << sc.name << '\n';
  bool all = true;
  for (const auto& r : run_invariant_suite(sc, overrides)) {
    print_check(out, r);
    all = all && r.pass;
  }
  return all ? kSuccess : kCheckFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-smeared expectation values, joint space-time densities and collapse sampling."};
  app.name("chronos");
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_common = [&](CLI::App* sub) {
    auto* s = sub->add_option("--scenario", cfg.scenario, "builtin scenario, system[/distribution]");
    auto* f = sub->add_option("--file", cfg.file, "scenario JSON file");
    s->excludes(f);
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--tmax-override", cfg.tmax_override, "run to this t_max, keeping dt");
    sub->add_flag("--gzip", cfg.gzip, "gzip CSV outputs");
  };

  auto* evolve = app.add_subcommand("evolve", "propagate and write per-slice densities");
  auto* smear = app.add_subcommand("smear", "time-smeared expectation of an observable");
  auto* joint = app.add_subcommand("joint", "joint space-time density and its marginals");
  auto* sample = app.add_subcommand("sample", "simulate collapse measurements");
  auto* check = app.add_subcommand("check", "run the invariant suite");
  for (auto* sub : {evolve, smear, joint, sample, check}) add_common(sub);
  smear->add_option("--observable", cfg.observable, "x, p, H, sigma_z or projector:i");
  sample->add_option("--n", cfg.n, "number of records")->capture_default_str();
  sample->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
  check->add_option("--tolerance", cfg.tolerances, "override a tolerance, KEY=VAL")->take_all();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run 'chronos --help' for usage\n";
    return kUsage;
  }
  if (cfg.scenario.empty() && cfg.file.empty()) {
    err << "error: one of --scenario or --file is required\n";
    return kUsage;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(cfg, out);
    if (smear->parsed()) return cmd_smear(cfg, out);
    if (joint->parsed()) return cmd_joint(cfg, out);
    if (sample->parsed()) return cmd_sample(cfg, out);
    return cmd_check(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << '\n';
    return kScenarioLoad;
  } catch (const UnsupportedOperatorError& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownObservable;
  } catch (const RepresentationError& e) {
    err << "error: " << e.what() << '\n';
    return kRepresentationMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace chronos::cli
