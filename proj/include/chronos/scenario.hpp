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

#ifndef CHRONOS_SCENARIO_HPP
#define CHRONOS_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chronos/collapse_distribution.hpp"
#include "chronos/hamiltonian.hpp"
#include "chronos/propagator.hpp"
#include "chronos/state.hpp"

namespace chronos {

namespace potential {
struct Zero {
  bool operator==(const Zero&) const = default;
};
/// V(x) = m omega^2 x^2 / 2
struct Harmonic {
  double omega;
  bool operator==(const Harmonic&) const = default;
};
/// V(x) = 0 for |x| < width / 2, `depth` elsewhere.
struct SquareWell {
  double width;
  double depth;
  bool operator==(const SquareWell&) const = default;
};
}  // namespace potential

using Potential = std::variant<potential::Zero, potential::Harmonic, potential::SquareWell>;

namespace initial {
struct Gaussian {
  double x0;
  double sigma;
  double p0;
  bool operator==(const Gaussian&) const = default;
};
/// sum_j c_j |E_{levels[j]}> over eigenvectors of the discretized Hamiltonian.
struct EigenSuperposition {
  std::vector<std::size_t> levels;
  std::vector<double> coefficients;
  bool operator==(const EigenSuperposition&) const = default;
};
}  // namespace initial

using InitialWavefunction = std::variant<initial::Gaussian, initial::EigenSuperposition>;

struct GridSystem {
  double x_min;
  double x_max;
  std::size_t n;
  Potential potential;
  InitialWavefunction initial;
  bool operator==(const GridSystem&) const = default;
};

struct FiniteSystem {
  CMatrix hamiltonian;
  CVector initial;
  bool operator==(const FiniteSystem& o) const {
    return hamiltonian.rows() == o.hamiltonian.rows() && hamiltonian.cols() == o.hamiltonian.cols() &&
           initial.size() == o.initial.size() && hamiltonian == o.hamiltonian && initial == o.initial;
  }
};

using SystemSpec = std::variant<GridSystem, FiniteSystem>;

enum class Propagation { SplitOperator, Exact };

/// Expected value of a smeared observable and where it comes from.
struct Reference {
  std::string observable;
  double value;
  double tolerance;
  std::string kind;    ///< "exact" (closed form) or "oracle" (independent numerics)
  std::string oracle;  ///< how the value was obtained
  bool operator==(const Reference&) const = default;
};

struct Scenario {
  std::string name;
  SystemSpec system;
  double t_max;
  std::size_t n_steps;
  Propagation propagation;
  CollapseDistribution collapse;
  std::optional<std::string> collapse_csv;  ///< set when the table came from a file
  Constants constants;
  std::vector<Reference> references;

  bool operator==(const Scenario&) const = default;
};

/// Every builtin "system/distribution" pair. Systems: free-gaussian,
/// harmonic-coherent, harmonic-ground, rabi-qubit, decay-superposition,
/// square-well-superposition. Distributions: delta, uniform, exponential,
/// truncated_gaussian.
const std::vector<Scenario>& builtin_scenarios();
std::vector<std::string> builtin_systems();
/// Looks up "system/distribution" or a bare system name (its default
/// distribution). Throws ParseError for unknown names.
Scenario find_builtin(const std::string& name);

/// Parses and validates a scenario file. Schema violations raise ParseError
/// and semantic violations ValidationError, both carrying the field path.
/// A collapse.csv_path is resolved relative to the file.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir = {});
std::string serialize_scenario(const Scenario& sc);
void save_scenario(const Scenario& sc, const std::filesystem::path& path);

Representation scenario_representation(const Scenario& sc);
LinearOperator scenario_hamiltonian(const Scenario& sc);
StateVector scenario_initial_state(const Scenario& sc);
TimeGrid scenario_time_grid(const Scenario& sc);
Trajectory run_trajectory(const Scenario& sc);

/// Same scenario on a time grid refined by `factor` (n_steps * factor).
Scenario refined(const Scenario& sc, std::size_t factor);
/// Same scenario with the run extended or shortened to `t_max`, keeping dt.
/// A collapse law reaching past `t_max` is re-truncated there, and the
/// references (valid only for the original horizon) are dropped.
Scenario with_t_max(const Scenario& sc, double t_max);

}  // namespace chronos

#endif  // CHRONOS_SCENARIO_HPP
