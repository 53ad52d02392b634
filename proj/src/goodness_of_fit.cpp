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

#include "chronos/goodness_of_fit.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "chronos/errors.hpp"

namespace chronos {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("KS statistic needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw DomainError("KS critical value needs n >= 1 and 0 < alpha < 1");
  const double k = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double rn = std::sqrt(static_cast<double>(n));
  return k / (rn + 0.12 + 0.11 / rn);
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected_probabilities, double alpha,
                                double min_expected) {
  if (observed.size() != expected_probabilities.size() || observed.empty()) {
    throw DomainError("chi-square needs matching, nonempty observed and expected bins");
  }
  double n = 0.0;
  double total_p = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    n += static_cast<double>(observed[i]);
    total_p += expected_probabilities[i];
  }
  if (!(n > 0.0) || !(total_p > 0.0)) throw DomainError("chi-square needs positive totals");

  double stat = 0.0;
  std::size_t bins = 0;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  std::size_t pooled = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * expected_probabilities[i] / total_p;
    const double o = static_cast<double>(observed[i]);
    if (e < min_expected) {
      pooled_obs += o;
      pooled_exp += e;
      ++pooled;
      continue;
    }
    stat += (o - e) * (o - e) / e;
    ++bins;
  }
  if (pooled > 0 && pooled_exp > 0.0) {
    stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++bins;
  } else if (pooled > 0 && pooled_obs > 0.0) {
    stat = std::numeric_limits<double>::infinity();  // mass where none is expected
  }
  if (bins < 2) throw DomainError("chi-square needs at least two usable bins");

  ChiSquareResult r;
  r.statistic = stat;
  r.dof = bins - 1;
  r.pooled_bins = pooled;
  const boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = std::isfinite(stat) ? boost::math::cdf(boost::math::complement(dist, stat)) : 0.0;
  r.critical_value = boost::math::quantile(boost::math::complement(dist, alpha));
  return r;
}

}  // namespace chronos
