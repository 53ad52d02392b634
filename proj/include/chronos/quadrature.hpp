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

#ifndef CHRONOS_QUADRATURE_HPP
#define CHRONOS_QUADRATURE_HPP

#include <cstddef>
#include <span>

#include "chronos/grid.hpp"

namespace chronos {

/// Composite Simpson weights for `n_intervals` equal panels of width h.
///
/// An odd panel count closes with the 3/8 rule on the last three panels;
/// one panel falls back to the trapezoid rule.
RVector simpson_weights(std::size_t n_intervals, double h);

/// Composite trapezoid weights on the same nodes.
RVector trapezoid_weights(std::size_t n_intervals, double h);

/// Ordered dot product sum_k w_k v_k (fixed summation order).
double weighted_sum(std::span<const double> weights, std::span<const double> values);

}  // namespace chronos

#endif  // CHRONOS_QUADRATURE_HPP
