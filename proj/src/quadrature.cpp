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

#include "chronos/quadrature.hpp"

#include "chronos/errors.hpp"

namespace chronos {

RVector simpson_weights(std::size_t n_intervals, double h) {
  if (n_intervals == 0) throw DomainError("quadrature needs at least one interval");
  const auto n = static_cast<Eigen::Index>(n_intervals);
  RVector w = RVector::Zero(n + 1);
  if (n == 1) {
    w << 0.5 * h, 0.5 * h;
    return w;
  }
  // Panels [0, m] use Simpson 1/3; for odd n the last three use 3/8.
  const Eigen::Index m = (n % 2 == 0) ? n : n - 3;
  for (Eigen::Index i = 0; i + 2 <= m; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (m != n) {
    w[m] += 3.0 * h / 8.0;
    w[m + 1] += 9.0 * h / 8.0;
    w[m + 2] += 9.0 * h / 8.0;
    w[m + 3] += 3.0 * h / 8.0;
  }
  return w;
}

RVector trapezoid_weights(std::size_t n_intervals, double h) {
  if (n_intervals == 0) throw DomainError("quadrature needs at least one interval");
  const auto n = static_cast<Eigen::Index>(n_intervals);
  RVector w = RVector::Constant(n + 1, h);
  w[0] = 0.5 * h;
  w[n] = 0.5 * h;
  return w;
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  if (weights.size() != values.size()) throw DomainError("weight and value counts differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * values[i];
  return acc;
}

}  // namespace chronos
