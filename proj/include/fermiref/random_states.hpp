// Copyright 2026 The fermiref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>

#include "fermiref/fock.hpp"

namespace fermiref {

/// Gaussian random amplitudes over every label in H (all system subsets with at most N
/// fermions, reference part fixed). Normalized. Ancillas are left in |0>.
SparseState random_H_state(const RegisterLayout &layout, BackendKind backend, Rng &rng);

/// Gaussian random amplitudes over all fermionic labels, optionally restricted to a fixed
/// total occupation. Physical backend, normalized.
SparseState random_fock_state(const RegisterLayout &layout, Rng &rng, std::optional<std::size_t> atoms = std::nullopt);

/// Gaussian random superposition of the logical basis states of the repetition code.
/// With `logical_number` set, only basis states with that many occupied blocks are used.
SparseState random_code_state(
    const RegisterLayout &layout, BackendKind backend, Rng &rng, std::optional<int> logical_number = std::nullopt);

/// A standard complex Gaussian variate.
Complex random_gaussian(Rng &rng);

}  // namespace fermiref
