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

#include "fermiref/qec.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fermiref {

std::vector<std::size_t> sample_phase_error_layer(SparseState &state, const NoiseSpec &spec, Rng &rng) {
    if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
        throw std::invalid_argument(fmt::format("error probability {} outside [0, 1]", spec.p));
    }
    const auto &layout = state.layout();
    std::vector<std::size_t> targets = spec.targets;
    if (targets.empty()) {
        for (std::size_t m = 0; m < layout.num_system_modes; ++m) {
            targets.push_back(m);
        }
    }
    if (spec.include_reference) {
        for (std::size_t j = 0; j < layout.num_reference_modes; ++j) {
            targets.push_back(layout.reference_mode(j));
        }
    }
    std::vector<std::size_t> struck;
    for (std::size_t mode : targets) {
        if (uniform01(rng) < spec.p) {
            apply_local_phase(state, mode, kPi);
            struck.push_back(mode);
        }
    }
    return struck;
}

void controlled_D(SparseState &state, std::size_t a, std::size_t i, double theta, DVariant variant, DPath path) {
    if (a >= state.layout().num_ancilla_qubits) {
        throw std::out_of_range(fmt::format("ancilla {} out of range", a));
    }
    if (path == DPath::Exact) {
        apply_controlled(state, a, [&](SparseState &on) { on = apply_D_variant(on, i, theta, variant); });
        return;
    }
    if (state.backend() != BackendKind::Physical) {
        throw std::invalid_argument("the decomposed D path needs the physical backend");
    }
    auto gates = variant == DVariant::D ? D_decomposition(state.layout(), i, theta)
                                        : D_prime_decomposition(state.layout(), i, theta);
    apply_controlled(state, a, [&](SparseState &on) {
        require_in_H(on, "controlled_D");
        apply_unitaries(on, gates);
    });
}

std::string to_string(Correction c) {
    switch (c) {
        case Correction::None:
            return "none";
        case Correction::P1:
            return "p1";
        case Correction::P2:
            return "p2";
        case Correction::P3:
            return "p3";
    }
    return "?";
}

Correction decode(const BlockSyndrome &s) {
    for (const auto &[correction, syndrome] : kDecodeTable) {
        if (syndrome == s) {
            return correction;
        }
    }
    throw std::invalid_argument(fmt::format("syndrome entries must be +-1, got ({}, {})", s.s12, s.s23));
}

void apply_correction(SparseState &state, std::size_t b, Correction c) {
    if (c != Correction::None) {
        apply_local_phase(state, 3 * b + static_cast<std::size_t>(c) - 1, kPi);
    }
}

std::array<std::pair<Correction, BlockSyndrome>, 4> brute_force_syndrome_table() {
    auto layout = RegisterLayout::make(3, 3, 3, 0);
    SparseState zero = logical_basis_state(layout, BackendKind::Physical, {0});
    SparseState one = logical_basis_state(layout, BackendKind::Physical, {1});
    SparseState mixed = 0.6 * zero + Complex{0.0, 0.8} * one;

    auto exact_sign = [](double value) {
        if (std::abs(value - 1.0) < 1e-12) {
            return 1;
        }
        if (std::abs(value + 1.0) < 1e-12) {
            return -1;
        }
        throw std::logic_error(fmt::format("stabilizer expectation {} is not +-1", value));
    };

    std::array<std::pair<Correction, BlockSyndrome>, 4> table;
    for (std::size_t k = 0; k < 4; ++k) {
        auto c = static_cast<Correction>(k);
        std::optional<BlockSyndrome> seen;
        for (const SparseState *word : {&zero, &one, &mixed}) {
            SparseState hit = *word;
            apply_correction(hit, 0, c);
            BlockSyndrome s{exact_sign(stabilizer_expectation(hit, 0, Stabilizer::S12)),
                            exact_sign(stabilizer_expectation(hit, 0, Stabilizer::S23))};
            if (seen && !(*seen == s)) {
                throw std::logic_error("syndrome depends on the codeword");
            }
            seen = s;
        }
        table[k] = {c, *seen};
    }
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            if (table[a].second == table[b].second) {
                throw std::logic_error("two corrections share a syndrome");
            }
        }
    }
    return table;
}

StabilizerOutcome measure_stabilizer(
    SparseState &state, std::size_t b, Stabilizer which, std::size_t ancilla, Rng &rng, DPath path) {
    const auto &layout = state.layout();
    if (ancilla >= layout.num_ancilla_qubits) {
        throw std::out_of_range(fmt::format("ancilla {} out of range", ancilla));
    }
    if (layout.block_size != 3 || b >= layout.num_blocks()) {
        throw std::out_of_range(fmt::format("block {} out of range", b));
    }
    for (const auto &[label, amp] : state) {
        if (label.qubit(ancilla)) {
            throw std::invalid_argument(fmt::format("ancilla {} is not in |0>", ancilla));
        }
    }
    std::size_t first = which == Stabilizer::S12 ? 3 * b : 3 * b + 1;
    DVariant variant = which == Stabilizer::S12 ? DVariant::D : DVariant::DPrime;

    apply_qubit_gate(state, {QubitGateKind::H, ancilla});
    controlled_D(state, ancilla, first, kPi / 2, variant, path);
    apply_qubit_gate(state, {QubitGateKind::Sdg, ancilla});
    controlled_D(state, ancilla, first + 1, kPi / 2, variant, path);
    apply_qubit_gate(state, {QubitGateKind::H, ancilla});

    StabilizerOutcome out;
    out.ancilla_z = measure_qubit(state, ancilla, MeasureBasis::Z, rng);
    out.eigenvalue = -out.ancilla_z;
    if (out.ancilla_z == -1) {
        apply_qubit_gate(state, {QubitGateKind::X, ancilla});
    }
    return out;
}

Syndrome qec_round(SparseState &state, std::size_t ancilla, Rng &rng, DPath path) {
    Syndrome syndrome;
    const std::size_t blocks = state.layout().num_blocks();
    syndrome.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        BlockSyndrome s;
        s.s12 = measure_stabilizer(state, b, Stabilizer::S12, ancilla, rng, path).eigenvalue;
        s.s23 = measure_stabilizer(state, b, Stabilizer::S23, ancilla, rng, path).eigenvalue;
        apply_correction(state, b, decode(s));
        syndrome.push_back(s);
    }
    return syndrome;
}

// ---------------------------------------------------------------------------------------
// Reference recovery

int logical_number_of(const SparseState &state) {
    const auto &layout = state.layout();
    std::optional<int> value;
    for (const auto &[label, amp] : state) {
        int total = 0;
        for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
            total += logical_number_value(label.modes, b);
        }
        if (value && *value != total) {
            throw std::invalid_argument("state mixes different logical numbers");
        }
        value = total;
    }
    if (!value) {
        throw std::invalid_argument("logical number of a zero vector");
    }
    return *value;
}

ReferenceRecovery::ReferenceRecovery(const RegisterLayout &layout, BackendKind backend, int logical_number)
    : layout_(layout), backend_(backend), logical_number_(logical_number) {
    const std::size_t blocks = layout.num_blocks();
    if (blocks > 20) {
        throw std::invalid_argument("too many logical modes for an explicit sector basis");
    }
    RegisterLayout fermions = layout;
    fermions.num_ancilla_qubits = 0;
    for (std::uint64_t config = 0; config < (std::uint64_t{1} << blocks); ++config) {
        if (popcount(config) != logical_number) {
            continue;
        }
        std::vector<int> occ(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            occ[b] = static_cast<int>((config >> b) & 1U);
        }
        SparseState word = logical_basis_state(fermions, backend, occ);
        SparseState lifted(layout, backend);
        for (const auto &[label, amp] : word) {
            lifted.set(label, amp);
        }
        basis_.push_back(std::move(lifted));
    }
    if (basis_.empty()) {
        throw std::invalid_argument(fmt::format("no logical states with N_L = {}", logical_number));
    }
}

void ReferenceRecovery::reencode(SparseState &state, std::size_t n) const {
    if (!(state.layout() == layout_) || state.backend() != backend_) {
        throw std::invalid_argument("state does not match the recovery register");
    }
    const std::uint64_t sys_mask = layout_.system_mask();
    SparseState out = state.empty_like();
    for (const auto &word : basis_) {
        // Projected codeword restricted to system count n; one normalization per word.
        double norm_sq = 0.0;
        for (const auto &[label, amp] : word) {
            if (static_cast<std::size_t>(popcount(label.modes & sys_mask)) == n) {
                norm_sq += std::norm(amp);
            }
        }
        if (norm_sq == 0.0) {
            continue;
        }
        const double scale = 1.0 / std::sqrt(norm_sq);
        // Overlap per ancilla pattern: <v_j (x) a | psi>.
        std::unordered_map<std::uint32_t, Complex> overlaps;
        for (const auto &[label, amp] : state) {
            BasisLabel fermion{label.modes, 0};
            Complex w = word.amplitude(fermion);
            if (w != Complex{}) {
                overlaps[label.qubits] += std::conj(w) * scale * amp;
            }
        }
        for (const auto &[qubits, overlap] : overlaps) {
            for (const auto &[label, amp] : word) {
                out.add({label.modes, qubits}, overlap * amp);
            }
        }
    }
    out.prune();
    state = std::move(out);
}

std::size_t ReferenceRecovery::recover(SparseState &state, Rng &rng) const {
    std::vector<std::size_t> reference_modes;
    for (std::size_t j = 0; j < layout_.num_reference_modes; ++j) {
        reference_modes.push_back(layout_.reference_mode(j));
    }
    if (logical_number_of(state) != logical_number_) {
        throw std::invalid_argument("state is not in the recovery sector");
    }
    std::size_t nr = measure_mode_number(state, reference_modes, rng);
    reencode(state, layout_.total_atoms - nr);
    return nr;
}

std::size_t measure_reference_and_recover(SparseState &state, Rng &rng) {
    ReferenceRecovery recovery(state.layout(), state.backend(), logical_number_of(state));
    return recovery.recover(state, rng);
}

// ---------------------------------------------------------------------------------------
// Loss channel

std::vector<Operator> loss_kraus_operators(const SteaneCode &code, double p) {
    if (!(p > 0.0 && p < 1.0 / 7.0)) {
        throw std::invalid_argument(fmt::format("loss probability {} outside (0, 1/7)", p));
    }
    std::vector<Operator> kraus;
    const double k0 = std::sqrt(1.0 - 7.0 * p);
    const double kp = std::sqrt(p);
    auto scaled_identity = [k0](const SparseState &s) { return Complex{k0} * s; };
    kraus.push_back({"K0", scaled_identity, scaled_identity});
    for (std::size_t i = 0; i < 7; ++i) {
        std::size_t mode = code.modes[i];
        kraus.push_back({fmt::format("K{}", i + 1),
                         [mode, kp](const SparseState &s) { return Complex{kp} * apply_annihilate(s, mode); },
                         [mode, kp](const SparseState &s) { return Complex{kp} * apply_create(s, mode); }});
    }
    for (std::size_t i = 0; i < 7; ++i) {
        std::size_t mode = code.modes[i];
        auto hole = [mode, kp](const SparseState &s) {
            SparseState out = s - apply_number(s, mode);
            out *= kp;
            out.prune();
            return out;
        };
        kraus.push_back({fmt::format("K{}", i + 8), hole, hole});
    }
    return kraus;
}

SparseState apply_loss_kraus(const SparseState &state, const SteaneCode &code, std::size_t which, double p) {
    auto kraus = loss_kraus_operators(code, p);
    if (which >= kraus.size()) {
        throw std::out_of_range(fmt::format("Kraus index {} out of range", which));
    }
    return kraus[which].apply(state);
}

}  // namespace fermiref
