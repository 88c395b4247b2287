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

#include "fermiref/reference.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fermiref {

namespace {

void require_system_mode(const RegisterLayout &layout, std::size_t i) {
    if (!layout.is_system_mode(i)) {
        throw std::out_of_range(fmt::format("mode {} is not a system mode ({} system modes)", i, layout.num_system_modes));
    }
}

void require_physical(const SparseState &state, const char *what) {
    if (state.backend() != BackendKind::Physical) {
        throw std::invalid_argument(fmt::format("{} needs the physical backend", what));
    }
}

// Occupation of reference site j (1-based), with the boundary values eta_0 = 1, eta_{M_r+1} = 0.
bool eta(const RegisterLayout &layout, std::uint64_t modes, std::size_t j) {
    if (j == 0) {
        return true;
    }
    if (j > layout.num_reference_modes) {
        return false;
    }
    return (modes >> layout.reference_mode(j - 1)) & 1U;
}

SparseState reference_ladder(const SparseState &state, bool create) {
    require_physical(state, "the reference ladder");
    const auto &layout = state.layout();
    SparseState out = state.empty_like();
    out.reserve(state.size());
    for (const auto &[label, amp] : state) {
        for (std::size_t j = 1; j <= layout.num_reference_modes; ++j) {
            // R_j = (1 - eta_{j+1}) r_j eta_{j-1}; its adjoint needs site j empty instead.
            if (eta(layout, label.modes, j) == create || !eta(layout, label.modes, j - 1) ||
                eta(layout, label.modes, j + 1)) {
                continue;
            }
            std::size_t mode = layout.reference_mode(j - 1);
            double sign = jw_sign(layout, label.modes, mode);
            out.add(BasisLabel{label.modes ^ (std::uint64_t{1} << mode), label.qubits}, sign * amp);
        }
    }
    return out;
}

SparseState compressed_referenced(const SparseState &state, std::size_t i, bool create) {
    const auto &layout = state.layout();
    const std::uint64_t bit = std::uint64_t{1} << i;
    const double global = (layout.total_atoms % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    SparseState out = state.empty_like();
    out.reserve(state.size());
    for (const auto &[label, amp] : state) {
        if (static_cast<bool>(label.modes & bit) == create) {
            continue;
        }
        if (create && static_cast<std::size_t>(popcount(label.modes)) >= layout.total_atoms) {
            continue;  // empty reference: R annihilates
        }
        double sign = global * jw_sign(layout, label.modes, i);
        out.add(BasisLabel{label.modes ^ bit, label.qubits}, sign * amp);
    }
    return out;
}

}  // namespace

std::uint64_t reference_basis_bits(const RegisterLayout &layout, std::size_t n) {
    return reference_pattern(layout, n);
}

SparseState apply_R(const SparseState &state) {
    return reference_ladder(state, false);
}

SparseState apply_R_dagger(const SparseState &state) {
    return reference_ladder(state, true);
}

SparseState apply_c(const SparseState &state, std::size_t i) {
    require_system_mode(state.layout(), i);
    if (state.backend() == BackendKind::Compressed) {
        return compressed_referenced(state, i, false);
    }
    return apply_R_dagger(apply_annihilate(state, i));
}

SparseState apply_c_dagger(const SparseState &state, std::size_t i) {
    require_system_mode(state.layout(), i);
    if (state.backend() == BackendKind::Compressed) {
        return compressed_referenced(state, i, true);
    }
    return apply_create(apply_R(state), i);
}

bool is_in_H(const SparseState &state) {
    const auto &layout = state.layout();
    for (const auto &[label, amp] : state) {
        std::size_t n = static_cast<std::size_t>(popcount(label.modes & layout.system_mask()));
        if (n > layout.total_atoms) {
            return false;
        }
        if (state.backend() == BackendKind::Compressed) {
            if (label.modes & ~layout.system_mask()) {
                return false;
            }
            continue;
        }
        if ((label.modes & layout.reference_mask()) != reference_pattern(layout, n)) {
            return false;
        }
    }
    return true;
}

void require_in_H(const SparseState &state, const char *what) {
    if (!is_in_H(state)) {
        throw std::invalid_argument(fmt::format("{}: state is not in the referenced subspace H", what));
    }
}

SparseState apply_D_exact(const SparseState &state, std::size_t i, double theta) {
    require_system_mode(state.layout(), i);
    require_in_H(state, "apply_D_exact");
    SparseState flipped = apply_c(state, i);
    flipped += apply_c_dagger(state, i);
    SparseState out = std::cos(theta) * state;
    out += Complex{0.0, std::sin(theta)} * std::move(flipped);
    out.prune();
    return out;
}

std::vector<GateOp> D_decomposition(const RegisterLayout &layout, std::size_t i, double theta) {
    require_system_mode(layout, i);
    const std::size_t mr = layout.num_reference_modes;
    std::vector<GateOp> gates;
    gates.reserve(6 * mr);
    // Factor k of the product is
    //   e^{i theta/2 T_k} E_k e^{-i theta/2 T_k} E_k,  E_k = e^{i pi eta_k eta_{k+1}} e^{i pi eta_k eta_{k-1}},
    // and the product runs k = 1..M_r left to right, so k = M_r acts first.
    for (std::size_t k = mr; k >= 1; --k) {
        const std::size_t rk = layout.reference_mode(k - 1);
        auto push_density = [&]() {
            if (k == 1) {
                gates.push_back(LocalPhase{rk, kPi});  // eta_0 = 1
            } else {
                gates.push_back(DensityPhase{rk, layout.reference_mode(k - 2), kPi});
            }
            if (k == mr) {
                gates.push_back(LocalPhase{rk, 0.0});  // eta_{M_r+1} = 0
            } else {
                gates.push_back(DensityPhase{rk, layout.reference_mode(k), kPi});
            }
        };
        push_density();
        gates.push_back(Tunneling{i, rk, -theta / 2});
        push_density();
        gates.push_back(Tunneling{i, rk, theta / 2});
    }
    return gates;
}

void apply_D_decomposed(SparseState &state, std::size_t i, double theta) {
    require_physical(state, "apply_D_decomposed");
    apply_unitaries(state, D_decomposition(state.layout(), i, theta));
}

SparseState apply_D_prime(const SparseState &state, std::size_t i, double theta) {
    require_system_mode(state.layout(), i);
    require_in_H(state, "apply_D_prime");
    SparseState majorana = apply_c_dagger(state, i);
    majorana -= apply_c(state, i);
    // exp(i theta A) with A = i(c^dagger - c): cos theta + i sin theta * i (c^dagger - c).
    SparseState out = std::cos(theta) * state;
    out += Complex{-std::sin(theta), 0.0} * std::move(majorana);
    out.prune();
    return out;
}

std::vector<GateOp> D_prime_decomposition(const RegisterLayout &layout, std::size_t i, double theta) {
    std::vector<GateOp> gates;
    gates.push_back(LocalPhase{i, -kPi / 2});
    for (auto &g : D_decomposition(layout, i, theta)) {
        gates.push_back(std::move(g));
    }
    gates.push_back(LocalPhase{i, kPi / 2});
    return gates;
}

SparseState apply_D_variant(const SparseState &state, std::size_t i, double theta, DVariant variant) {
    return variant == DVariant::D ? apply_D_exact(state, i, theta) : apply_D_prime(state, i, theta);
}

void apply_global_reference_phase(SparseState &state, double eps) {
    const std::uint64_t mask = state.layout().reference_mask();
    for (auto &[label, amp] : state) {
        amp *= std::polar(1.0, eps * popcount(state.full_modes(label) & mask));
    }
}

}  // namespace fermiref
