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

#ifndef CHRONOS_SMEAR_HPP
#define CHRONOS_SMEAR_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chronos/collapse_distribution.hpp"
#include "chronos/propagator.hpp"

namespace chronos {

/// Quadrature of f(t) g(t) over the trajectory's own time nodes.
///
/// Only nodes up to the collapse support end are used; that end must
/// coincide with a node. `weights` are the composite Simpson weights,
/// `trapezoid` the trapezoid weights on the same nodes (for error estimates).
struct CollapseQuadrature {
  std::size_t n_nodes;
  RVector times;
  RVector density;
  RVector weights;
  RVector trapezoid;
};

/// Throws CoverageError if the support extends past the trajectory or ends
/// between nodes, VariantError for a delta distribution.
CollapseQuadrature collapse_quadrature(const TimeGrid& grid, const CollapseDistribution& dist);

/// Position of a delta collapse time on the grid: value = (1 - frac) * slice[lower] + frac * slice[lower + 1].
struct SliceInterpolation {
  std::size_t lower;
  double frac;
};
SliceInterpolation bracket(const TimeGrid& grid, double t);

struct SmearReport {
  double value = 0.0;             ///< <<A>>
  RVector times;                  ///< t_k
  RVector density;                ///< f(t_k) (zero for delta)
  RVector expectation;            ///< <A>(t_k)
  RVector integrand;              ///< f(t_k) <A>(t_k)
  RVector weights;                ///< quadrature weights (zero for delta)
  double quadrature_error = 0.0;  ///< |Simpson - trapezoid|
  std::optional<double> delta_time;
};

/// f-weighted time average of <A>(t). A delta distribution returns <A> at
/// its location, linearly interpolated between the two bracketing slices.
SmearReport smeared_expectation(const Trajectory& traj, const CollapseDistribution& dist,
                                const LinearOperator& op);

/// <<T>> = integral of f(t) t: the mean collapse time.
double smeared_time_expectation(const CollapseDistribution& dist);

/// Writes columns t,f,expectation,integrand.
void write_smear_csv(const SmearReport& report, const std::filesystem::path& path);

struct OmegaOptions {
  std::size_t dense_cap = 2048;
  bool allow_matrix_free = false;
};

/// The f-weighted mixture of trajectory projectors.
///
/// Dense form stores the matrix acting on amplitude vectors (it carries the
/// dx measure, so its trace is the physical trace). The matrix-free form only
/// supports traces against operators, evaluated through <<A>>.
class SmearedState {
 public:
  enum class Form { Dense, MatrixFree };

  Form form() const noexcept { return matrix_ ? Form::Dense : Form::MatrixFree; }
  const CMatrix& matrix() const;
  const Representation& representation() const noexcept { return trajectory_->representation(); }
  const Trajectory& trajectory() const noexcept { return *trajectory_; }
  const CollapseDistribution& distribution() const noexcept { return distribution_; }
  /// "composite-simpson" or "delta-interpolation".
  const std::string& quadrature_rule() const noexcept { return rule_; }

  /// Tr(Omega A). Dense: explicit trace. Matrix-free: <<A>>.
  double trace_with(const LinearOperator& op) const;

 private:
  friend SmearedState build_omega(std::shared_ptr<const Trajectory>, const CollapseDistribution&,
                                  const OmegaOptions&);
  SmearedState(std::shared_ptr<const Trajectory> traj, CollapseDistribution dist,
               std::optional<CMatrix> matrix, std::string rule);

  std::shared_ptr<const Trajectory> trajectory_;
  CollapseDistribution distribution_;
  std::optional<CMatrix> matrix_;
  std::string rule_;
};

/// Throws ResourceError when the dimension exceeds the cap and the
/// matrix-free form is not allowed.
SmearedState build_omega(std::shared_ptr<const Trajectory> traj, const CollapseDistribution& dist,
                         const OmegaOptions& options = {});

struct OperatorTraceCheck {
  double trace_omega_a;  ///< Tr(Omega A)
  double smeared;        ///< <<A>> from the time integral
  double difference;
};

struct OmegaCheckReport {
  std::optional<double> trace;
  std::optional<double> min_eigenvalue;
  std::optional<double> second_eigenvalue;  ///< second largest
  std::optional<double> hermiticity_residual;
  std::optional<double> purity;
  std::vector<OperatorTraceCheck> operators;
};

/// Density-operator diagnostics. The matrix-free form fills only `operators`.
OmegaCheckReport omega_trace_checks(const SmearedState& omega,
                                    std::span<const LinearOperator> operators = {});

struct GriffithsTime {
  double delta_t;  ///< spread / |rate|, +inf when the rate vanishes
  double spread;   ///< standard deviation of A at t
  double rate;     ///< d<A>/dt by centred difference
};

/// Time for <A> to drift by one standard deviation at an interior node.
/// Throws DomainError if t is not an interior node.
GriffithsTime griffiths_delta_t(const Trajectory& traj, const LinearOperator& op, double t);

struct EnergyTimeReport {
  double delta_t;     ///< sqrt(Var f)
  double delta_e;     ///< sqrt(<H^2> - <H>^2) of the initial slice
  double mean_energy;
  double product;
  double hbar_half;
  bool satisfies_bound;  ///< product >= hbar / 2; not enforced
};

EnergyTimeReport energy_time_report(const Trajectory& traj, const CollapseDistribution& dist);

}  // namespace chronos

#endif  // CHRONOS_SMEAR_HPP
