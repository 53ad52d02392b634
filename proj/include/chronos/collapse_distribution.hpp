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

#ifndef CHRONOS_COLLAPSE_DISTRIBUTION_HPP
#define CHRONOS_COLLAPSE_DISTRIBUTION_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chronos/random_stream.hpp"

namespace chronos {

namespace collapse {

/// Degenerate distribution concentrated at `at`. Has no pointwise density.
struct Delta {
  double at;
  bool operator==(const Delta&) const = default;
};

struct Uniform {
  double a;
  double b;
  bool operator==(const Uniform&) const = default;
};

struct Exponential {
  double rate;
  double offset = 0.0;
  bool operator==(const Exponential&) const = default;
};

/// Shape >= 1 so the density stays bounded.
struct Gamma {
  double shape;
  double scale;
  double offset = 0.0;
  bool operator==(const Gamma&) const = default;
};

struct TruncatedGaussian {
  double mean;
  double sigma;
  bool operator==(const TruncatedGaussian&) const = default;
};

/// Piecewise-linear density through (t[i], density[i]); zero outside the
/// table. Values need not be normalized.
struct Tabulated {
  std::vector<double> t;
  std::vector<double> density;
  bool operator==(const Tabulated&) const = default;
};

}  // namespace collapse

using CollapseVariant = std::variant<collapse::Delta, collapse::Uniform, collapse::Exponential,
                                     collapse::Gamma, collapse::TruncatedGaussian,
                                     collapse::Tabulated>;

/// Probability density f(t) of the collapse instant, supported on [0, t_max].
///
/// Named families are truncated to [0, t_max] and renormalized, so the
/// density always integrates to one on the support. Tabulated tables are
/// renormalized by their exact piecewise-linear integral. The delta variant
/// is kept symbolic: it has moments, a CDF and samples but no pdf.
class CollapseDistribution {
 public:
  /// Throws DomainError for invalid parameters.
  CollapseDistribution(CollapseVariant variant, double t_max);

  static CollapseDistribution delta(double at, double t_max);
  static CollapseDistribution uniform(double a, double b, double t_max);
  static CollapseDistribution exponential(double rate, double t_max, double offset = 0.0);
  static CollapseDistribution gamma(double shape, double scale, double t_max, double offset = 0.0);
  static CollapseDistribution truncated_gaussian(double mean, double sigma, double t_max);
  static CollapseDistribution tabulated(std::vector<double> t, std::vector<double> density,
                                        double t_max);

  /// Reads a two-column CSV whose first line is exactly "t,f".
  /// Throws ParseError naming the file and line on malformed input.
  static collapse::Tabulated read_table_csv(const std::filesystem::path& path);
  static void write_table_csv(const collapse::Tabulated& table, const std::filesystem::path& path);

  const CollapseVariant& variant() const noexcept { return variant_; }
  double t_max() const noexcept { return t_max_; }
  bool is_delta() const noexcept;
  /// The concentration point of a delta distribution.
  std::optional<double> delta_time() const noexcept;
  /// "delta", "uniform", "exponential", "gamma", "truncated_gaussian", "tabulated".
  std::string family() const;

  /// Density at t. Throws DomainError outside [0, t_max] and VariantError
  /// for the delta variant.
  double pdf(double t) const;
  /// Cumulative probability at t (clamped outside the support).
  double cdf(double t) const;
  /// Inverse CDF, u in [0, 1]; the result lies in [0, t_max].
  double quantile(double u) const;

  /// Raw moment E[t^order], order in {1, 2}; DomainError otherwise.
  double moment(int order) const;
  double mean() const { return moment(1); }
  double variance() const;

  /// Mass the untruncated family places on [0, t_max] (table integral for
  /// tabulated input, 1 for delta).
  double support_mass() const noexcept { return mass_; }

  /// Points of [0, t_max] where the density is not smooth, including both ends.
  std::vector<double> breakpoints() const;

  double sample(RandomStream& rng) const;
  /// n i.i.d. draws by inverse-CDF. Throws DomainError for n == 0.
  std::vector<double> sample(RandomStream& rng, std::size_t n) const;

  bool operator==(const CollapseDistribution& other) const {
    return t_max_ == other.t_max_ && variant_ == other.variant_;
  }

 private:
  CollapseVariant variant_;
  double t_max_;
  double mass_ = 1.0;
  std::vector<double> cumulative_;  // tabulated: raw integral up to node i
};

}  // namespace chronos

#endif  // CHRONOS_COLLAPSE_DISTRIBUTION_HPP
