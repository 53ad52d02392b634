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

#include "chronos/observables.hpp"

#include <charconv>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

std::string valid_list() {
  std::string s;
  for (const auto& n : observable_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names{"x", "p", "H", "sigma_z", "projector:i"};
  return names;
}

LinearOperator make_observable(const std::string& name, const LinearOperator& hamiltonian,
                               const Constants& constants) {
  const Representation& rep = hamiltonian.representation();
  const std::size_t dim = dimension(rep);
  if (name == "H") return hamiltonian;
  if (name == "x" || name == "p") {
    if (!is_grid(rep)) throw RepresentationError("observable '" + name + "' needs a spatial grid");
    const SpatialGrid& g = grid_of(rep);
    return name == "x" ? position_operator(g) : momentum_operator(g, constants.hbar);
  }
  if (name == "sigma_z") {
    if (is_grid(rep) || dim % 2 != 0) {
      throw RepresentationError("sigma_z needs a finite basis of even dimension");
    }
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = i < dim / 2 ? 1.0 : -1.0;
    }
    return LinearOperator::dense(rep, std::move(m), true);
  }
  constexpr std::string_view prefix = "projector:";
  if (name.starts_with(prefix)) {
    const std::string_view digits = std::string_view(name).substr(prefix.size());
    std::size_t index = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
      throw UnsupportedOperatorError("malformed projector '" + name + "'; valid names: " + valid_list());
    }
    if (index >= dim) {
      throw RepresentationError("projector index " + std::to_string(index) + " out of range for dimension " +
                                std::to_string(dim));
    }
    if (is_grid(rep)) {
      RVector d = RVector::Zero(static_cast<Eigen::Index>(dim));
      d[static_cast<Eigen::Index>(index)] = 1.0;
      return LinearOperator::position_diagonal(grid_of(rep), std::move(d));
    }
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return LinearOperator::dense(rep, std::move(m), true);
  }
  throw UnsupportedOperatorError("unknown observable '" + name + "'; valid names: " + valid_list());
}

std::vector<std::string> suite_observables(const Representation& rep, std::size_t max_projectors) {
  std::vector<std::string> out{"H"};
  if (is_grid(rep)) {
    out.insert(out.end(), {"x", "p"});
    const std::size_t n = dimension(rep);
    for (std::size_t j = 0; j < max_projectors; ++j) {
      out.push_back("projector:" + std::to_string(n / 2 + j));
    }
  } else {
    if (dimension(rep) % 2 == 0) out.push_back("sigma_z");
    for (std::size_t j = 0; j < std::min(max_projectors, dimension(rep)); ++j) {
      out.push_back("projector:" + std::to_string(j));
    }
  }
  return out;
}

}  // namespace chronos
