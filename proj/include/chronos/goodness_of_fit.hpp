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

#ifndef CHRONOS_GOODNESS_OF_FIT_HPP
#define CHRONOS_GOODNESS_OF_FIT_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chronos {

/// Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Critical value of the KS statistic at significance `alpha` (asymptotic
/// Kolmogorov quantile with Stephens' small-sample correction).
double ks_critical_value(std::size_t n, double alpha);

struct ChiSquareResult {
  double statistic;
  std::size_t dof;
  double p_value;
  double critical_value;  ///< at the requested alpha
  std::size_t pooled_bins;

  bool rejected() const { return statistic > critical_value; }
};

/// Pearson chi-square of observed counts against bin probabilities. Bins
/// whose expected count falls below `min_expected` are pooled into one.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected_probabilities, double alpha,
                                double min_expected = 5.0);

}  // namespace chronos

#endif  // CHRONOS_GOODNESS_OF_FIT_HPP
