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

#include "fermiref/random_states.hpp"

#include <random>
#include <stdexcept>

#include "fermiref/codes.hpp"
#include "fermiref/reference.hpp"

namespace fermiref {

Complex random_gaussian(Rng &rng) {
    std::normal_distribution<double> normal;
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

SparseState random_H_state(const RegisterLayout &layout, BackendKind backend, Rng &rng) {
    if (layout.num_system_modes > 24) {
        throw std::invalid_argument("random_H_state enumerates 2^M_s labels; register too large");
    }
    SparseState state(layout, backend);
    const std::uint64_t count = std::uint64_t{1} << layout.num_system_modes;
    for (std::uint64_t sys = 0; sys < count; ++sys) {
        auto n = static_cast<std::size_t>(popcount(sys));
        if (n > layout.total_atoms) {
            continue;
        }
        std::uint64_t modes = backend == BackendKind::Physical ? sys | reference_basis_bits(layout, n) : sys;
        state.set(BasisLabel{modes, 0}, random_gaussian(rng));
    }
    state.normalize();
    return state;
}

SparseState random_fock_state(const RegisterLayout &layout, Rng &rng, std::optional<std::size_t> atoms) {
    if (layout.num_modes() > 24) {
        throw std::invalid_argument("random_fock_state enumerates 2^M labels; register too large");
    }
    SparseState state(layout, BackendKind::Physical);
    const std::uint64_t count = std::uint64_t{1} << layout.num_modes();
    for (std::uint64_t modes = 0; modes < count; ++modes) {
        if (atoms && static_cast<std::size_t>(popcount(modes)) != *atoms) {
            continue;
        }
        state.set(BasisLabel{modes, 0}, random_gaussian(rng));
    }
    state.normalize();
    return state;
}

SparseState random_code_state(const RegisterLayout &layout, BackendKind backend, Rng &rng, std::optional<int> logical_number) {
    const std::size_t blocks = layout.num_blocks();
    RegisterLayout fermions = layout;
    fermions.num_ancilla_qubits = 0;
    SparseState state(layout, backend);
    for (std::uint64_t config = 0; config < (std::uint64_t{1} << blocks); ++config) {
        if (logical_number && popcount(config) != *logical_number) {
            continue;
        }
        std::vector<int> occ(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            occ[b] = static_cast<int>((config >> b) & 1U);
        }
        Complex weight = random_gaussian(rng);
        for (const auto &[label, amp] : logical_basis_state(fermions, backend, occ)) {
            state.add(label, weight * amp);
        }
    }
    state.normalize();
    return state;
}

}  // namespace fermiref
