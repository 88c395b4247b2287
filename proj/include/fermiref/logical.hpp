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
#include <variant>

#include "fermiref/fock.hpp"

namespace fermiref {

/// Transversal exchange: physical fswaps between corresponding modes of blocks b and b2.
void fswap_logical(SparseState &state, std::size_t b, std::size_t b2);

/// exp(i theta N_b) via H CZ_L H . U(theta) . H CZ_L H on an ancilla starting in |0>.
/// U is T, S or Z for theta = pi/4, pi/2, pi and a general qubit phase otherwise. CZ_L is
/// the ancilla-controlled product of exp(i pi n) over the three modes of block b.
void phase_gadget_logical(SparseState &state, std::size_t b, double theta, std::size_t ancilla);

/// exp(i pi N_b N_b2): entangle a1 with block b and a2 with block b2, CZ(a1, a2), disentangle.
void density_gadget_logical(SparseState &state, std::size_t b, std::size_t b2, std::size_t a1, std::size_t a2);

/// exp(i theta (C_b^dag C_b2 + h.c.)): cos(theta) + i sin(theta) fswap_L on the sector
/// N_b + N_b2 = 1, identity elsewhere. Throws if the state has left the code space.
void tunneling_logical(SparseState &state, std::size_t b, std::size_t b2, double theta);

/// Same case split without the code-space check. The sector split uses block parities, so it
/// is well defined on any state.
void tunneling_logical_unchecked(SparseState &state, std::size_t b, std::size_t b2, double theta);

/// theta = pi/2 tunneling from hardware-level pieces: S_L gadgets on both blocks, then fswap_L.
void tunneling_logical_hardware(SparseState &state, std::size_t b, std::size_t b2, std::size_t ancilla);

/// tunneling_logical on the |1>_a component only.
void controlled_tunneling_logical(SparseState &state, std::size_t a, std::size_t b, std::size_t b2, double theta);

/// True iff both stabilizers of every block have expectation +1 within `tol`.
bool in_code_space(const SparseState &state, double tol = 1e-9);

struct FSwapL {
    std::size_t b;
    std::size_t b2;
};
struct PhaseL {
    std::size_t b;
    double theta;
    std::size_t ancilla;
};
struct DensityL {
    std::size_t b;
    std::size_t b2;
    std::size_t a1;
    std::size_t a2;
};
struct TunnelL {
    std::size_t b;
    std::size_t b2;
    double theta;
};
struct ControlledTunnelL {
    std::size_t ancilla;
    std::size_t b;
    std::size_t b2;
    double theta;
};

using LogicalGate = std::variant<FSwapL, PhaseL, DensityL, TunnelL, ControlledTunnelL>;

void apply_logical_gate(SparseState &state, const LogicalGate &gate);

std::string describe(const LogicalGate &gate);

}  // namespace fermiref
