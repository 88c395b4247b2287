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

#include "fermiref/logical.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "fermiref/codes.hpp"

namespace fermiref {

namespace {

void require_blocks(const SparseState &state, std::size_t b, std::size_t b2) {
    const auto &layout = state.layout();
    std::size_t blocks = layout.block_size == 3 ? layout.num_blocks() : 0;
    if (b >= blocks || b2 >= blocks) {
        throw std::out_of_range(fmt::format("blocks ({}, {}) out of range ({} blocks)", b, b2, blocks));
    }
    if (b == b2) {
        throw std::invalid_argument(fmt::format("two-block logical gate needs distinct blocks, got {} twice", b));
    }
}

void require_ancilla_zero(const SparseState &state, std::size_t a) {
    if (a >= state.layout().num_ancilla_qubits) {
        throw std::out_of_range(fmt::format("ancilla {} out of range", a));
    }
    for (const auto &[label, amp] : state) {
        if (label.qubit(a)) {
            throw std::invalid_argument(fmt::format("ancilla {} is not in |0>", a));
        }
    }
}

int block_parity(std::uint64_t modes, std::size_t b) {
    return popcount((modes >> (3 * b)) & 0b111U) & 1;
}

// H_a CZ_L H_a: flips the ancilla iff block b holds an odd number of fermions.
void entangle_parity(SparseState &state, std::size_t b, std::size_t a) {
    apply_qubit_gate(state, {QubitGateKind::H, a});
    apply_controlled(state, a, [b](SparseState &on) {
        for (std::size_t k = 0; k < 3; ++k) {
            apply_local_phase(on, 3 * b + k, kPi);
        }
    });
    apply_qubit_gate(state, {QubitGateKind::H, a});
}

QubitGate phase_for(double theta, std::size_t a) {
    if (theta == kPi / 4) {
        return {QubitGateKind::T, a};
    }
    if (theta == kPi / 2) {
        return {QubitGateKind::S, a};
    }
    if (theta == kPi) {
        return {QubitGateKind::Z, a};
    }
    return {QubitGateKind::Phase, a, 0, theta};
}

}  // namespace

void fswap_logical(SparseState &state, std::size_t b, std::size_t b2) {
    require_blocks(state, b, b2);
    for (std::size_t k = 0; k < 3; ++k) {
        apply_fswap(state, 3 * b + k, 3 * b2 + k);
    }
}

void phase_gadget_logical(SparseState &state, std::size_t b, double theta, std::size_t ancilla) {
    if (b >= state.layout().num_blocks()) {
        throw std::out_of_range(fmt::format("block {} out of range", b));
    }
    require_ancilla_zero(state, ancilla);
    entangle_parity(state, b, ancilla);
    apply_qubit_gate(state, phase_for(theta, ancilla));
    entangle_parity(state, b, ancilla);
}

void density_gadget_logical(SparseState &state, std::size_t b, std::size_t b2, std::size_t a1, std::size_t a2) {
    require_blocks(state, b, b2);
    if (a1 == a2) {
        throw std::invalid_argument("density gadget needs two distinct ancillas");
    }
    require_ancilla_zero(state, a1);
    require_ancilla_zero(state, a2);
    entangle_parity(state, b, a1);
    entangle_parity(state, b2, a2);
    apply_qubit_gate(state, {QubitGateKind::CZ, a1, a2});
    entangle_parity(state, b2, a2);
    entangle_parity(state, b, a1);
}

void tunneling_logical_unchecked(SparseState &state, std::size_t b, std::size_t b2, double theta) {
    require_blocks(state, b, b2);
    SparseState moving = state.empty_like();
    SparseState rest = state.empty_like();
    for (const auto &[label, amp] : state) {
        bool single = block_parity(label.modes, b) + block_parity(label.modes, b2) == 1;
        (single ? moving : rest).add(label, amp);
    }
    if (moving.empty()) {
        return;
    }
    SparseState swapped = moving;
    fswap_logical(swapped, b, b2);
    rest += std::cos(theta) * std::move(moving);
    rest += Complex{0.0, std::sin(theta)} * std::move(swapped);
    rest.prune();
    state = std::move(rest);
}

void tunneling_logical(SparseState &state, std::size_t b, std::size_t b2, double theta) {
    if (!in_code_space(state)) {
        throw std::invalid_argument("logical tunneling on a state outside the code space");
    }
    tunneling_logical_unchecked(state, b, b2, theta);
}

void tunneling_logical_hardware(SparseState &state, std::size_t b, std::size_t b2, std::size_t ancilla) {
    phase_gadget_logical(state, b, kPi / 2, ancilla);
    phase_gadget_logical(state, b2, kPi / 2, ancilla);
    fswap_logical(state, b, b2);
}

void controlled_tunneling_logical(SparseState &state, std::size_t a, std::size_t b, std::size_t b2, double theta) {
    if (a >= state.layout().num_ancilla_qubits) {
        throw std::out_of_range(fmt::format("ancilla {} out of range", a));
    }
    apply_controlled(state, a, [&](SparseState &on) { tunneling_logical_unchecked(on, b, b2, theta); });
}

bool in_code_space(const SparseState &state, double tol) {
    for (std::size_t b = 0; b < state.layout().num_blocks(); ++b) {
        for (Stabilizer s : {Stabilizer::S12, Stabilizer::S23}) {
            if (std::abs(stabilizer_expectation(state, b, s) - state.norm_squared()) > tol) {
                return false;
            }
        }
    }
    return true;
}

void apply_logical_gate(SparseState &state, const LogicalGate &gate) {
    std::visit(
        [&state](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FSwapL>) {
                fswap_logical(state, g.b, g.b2);
            } else if constexpr (std::is_same_v<T, PhaseL>) {
                phase_gadget_logical(state, g.b, g.theta, g.ancilla);
            } else if constexpr (std::is_same_v<T, DensityL>) {
                density_gadget_logical(state, g.b, g.b2, g.a1, g.a2);
            } else if constexpr (std::is_same_v<T, TunnelL>) {
                tunneling_logical_unchecked(state, g.b, g.b2, g.theta);
            } else {
                controlled_tunneling_logical(state, g.ancilla, g.b, g.b2, g.theta);
            }
        },
        gate);
}

std::string describe(const LogicalGate &gate) {
    return std::visit(
        [](const auto &g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FSwapL>) {
                return fmt::format("fswap_L({}, {})", g.b, g.b2);
            } else if constexpr (std::is_same_v<T, PhaseL>) {
                return fmt::format("phase_L({}, {:.6g})", g.b, g.theta);
            } else if constexpr (std::is_same_v<T, DensityL>) {
                return fmt::format("density_L({}, {})", g.b, g.b2);
            } else if constexpr (std::is_same_v<T, TunnelL>) {
                return fmt::format("tunnel_L({}, {}, {:.6g})", g.b, g.b2, g.theta);
            } else {
                return fmt::format("ctunnel_L(a{}, {}, {}, {:.6g})", g.ancilla, g.b, g.b2, g.theta);
            }
        },
        gate);
}

}  // namespace fermiref
