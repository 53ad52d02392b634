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

#ifndef CHRONOS_OBSERVABLES_HPP
#define CHRONOS_OBSERVABLES_HPP

#include <string>
#include <vector>

#include "chronos/hamiltonian.hpp"

namespace chronos {

/// Names accepted by make_observable: x, p, H, sigma_z, projector:i.
const std::vector<std::string>& observable_names();

/// Builds a named observable in `hamiltonian`'s representation.
///
///   x, p         position and momentum (grid only)
///   H            the Hamiltonian itself
///   sigma_z      +1 on the first half of a finite basis, -1 on the second
///   projector:i  onto basis state i, or onto grid node i (so <P> = |psi_i|^2 dx)
///
/// Throws UnsupportedOperatorError for an unknown name and
/// RepresentationError when the name does not apply to the representation.
LinearOperator make_observable(const std::string& name, const LinearOperator& hamiltonian,
                               const Constants& constants = {});

/// The observables meaningful for `rep` (projectors limited to `max_projectors`).
std::vector<std::string> suite_observables(const Representation& rep, std::size_t max_projectors = 2);

}  // namespace chronos

#endif  // CHRONOS_OBSERVABLES_HPP
