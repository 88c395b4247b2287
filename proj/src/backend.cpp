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

#include "fermiref/backend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "fermiref/qec.hpp"

namespace fermiref {

SparseState compress(const SparseState &physical) {
    if (physical.backend() != BackendKind::Physical) {
        throw std::invalid_argument("compress expects a physical-backend state");
    }
    require_in_H(physical, "compress");
    const std::uint64_t mask = physical.layout().system_mask();
    SparseState out(physical.layout(), BackendKind::Compressed);
    out.reserve(physical.size());
    for (const auto &[label, amp] : physical) {
        out.set({label.modes & mask, label.qubits}, amp);
    }
    return out;
}

SparseState decompress(const SparseState &compressed, const RegisterLayout &layout) {
    if (compressed.backend() != BackendKind::Compressed) {
        throw std::invalid_argument("decompress expects a compressed-backend state");
    }
    if (!(compressed.layout() == layout)) {
        throw std::invalid_argument("decompress: layout mismatch");
    }
    SparseState out(layout, BackendKind::Physical);
    out.reserve(compressed.size());
    for (const auto &[label, amp] : compressed) {
        out.set({compressed.full_modes(label), label.qubits}, amp);
    }
    return out;
}

std::string describe(const DualOp &op) {
    return std::visit(
        [](const auto &g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, GateOp>) {
                return describe(g);
            } else if constexpr (std::is_same_v<T, DGate>) {
                return fmt::format(
                    "{}{}({}, {:.6g})",
                    g.control ? fmt::format("c{}-", *g.control) : std::string{},
                    g.variant == DVariant::D ? "D" : "D'",
                    g.mode,
                    g.theta);
            } else if constexpr (std::is_same_v<T, LogicalGate>) {
                return describe(g);
            } else {
                return fmt::format("qec_round(a{})", g.ancilla);
            }
        },
        op);
}

std::vector<long> apply_dual_op(SparseState &state, const DualOp &op, Rng &rng) {
    std::vector<long> outcomes;
    const bool physical = state.backend() == BackendKind::Physical;
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, GateOp>) {
                if (auto r = apply_gate(state, g, rng)) {
                    outcomes.push_back(*r);
                }
            } else if constexpr (std::is_same_v<T, DGate>) {
                DPath path = physical ? DPath::Decomposed : DPath::Exact;
                if (g.control) {
                    controlled_D(state, *g.control, g.mode, g.theta, g.variant, path);
                } else if (physical) {
                    auto gates = g.variant == DVariant::D ? D_decomposition(state.layout(), g.mode, g.theta)
                                                          : D_prime_decomposition(state.layout(), g.mode, g.theta);
                    apply_unitaries(state, gates);
                } else {
                    state = apply_D_variant(state, g.mode, g.theta, g.variant);
                }
            } else if constexpr (std::is_same_v<T, LogicalGate>) {
                apply_logical_gate(state, g);
            } else {
                for (const auto &s : qec_round(state, g.ancilla, rng, physical ? DPath::Decomposed : DPath::Exact)) {
                    outcomes.push_back(s.s12);
                    outcomes.push_back(s.s23);
                }
            }
        },
        op);
    return outcomes;
}

double max_amplitude_deviation(const SparseState &a, const SparseState &b) {
    double worst = 0.0;
    for (const auto &[label, amp] : a) {
        worst = std::max(worst, std::abs(amp - b.amplitude(label)));
    }
    for (const auto &[label, amp] : b) {
        worst = std::max(worst, std::abs(amp - a.amplitude(label)));
    }
    return worst;
}

DualReport run_dual(const std::vector<DualOp> &circuit, const SparseState &initial, std::uint64_t seed) {
    DualReport report;
    SparseState physical = initial;
    SparseState compressed = compress(initial);
    Rng rng_physical(seed);
    Rng rng_compressed(seed);
    for (std::size_t k = 0; k < circuit.size(); ++k) {
        auto out_p = apply_dual_op(physical, circuit[k], rng_physical);
        auto out_c = apply_dual_op(compressed, circuit[k], rng_compressed);
        report.ops_run = k + 1;
        if (out_p != out_c) {
            report.outcomes_match = false;
        }
        if (!is_in_H(physical)) {
            report.failed_op = k;
            report.message = fmt::format("op {} ({}) left the referenced subspace", k, describe(circuit[k]));
            report.max_deviation = std::numeric_limits<double>::infinity();
            return report;
        }
    }
    report.max_deviation = max_amplitude_deviation(compress(physical), compressed);
    if (!report.outcomes_match) {
        report.message = "measurement outcomes differ between backends";
    }
    return report;
}

std::vector<DualOp> random_dual_circuit(const RegisterLayout &layout, std::size_t length, Rng &rng, std::size_t qec_ancilla) {
    const std::size_t ms = layout.num_system_modes;
    const std::size_t blocks = layout.block_size == 3 ? layout.num_blocks() : 0;
    if (blocks < 2 || layout.num_ancilla_qubits < 2 || qec_ancilla >= layout.num_ancilla_qubits) {
        throw std::invalid_argument("random_dual_circuit needs two blocks and two ancillas");
    }
    std::vector<std::size_t> free_ancillas;
    for (std::size_t a = 0; a < layout.num_ancilla_qubits; ++a) {
        if (a != qec_ancilla) {
            free_ancillas.push_back(a);
        }
    }
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto angle = [&rng]() { return 2 * kPi * uniform01(rng) - kPi; };
    auto distinct_pair = [&](std::size_t n) {
        std::size_t a = pick(n);
        std::size_t b = (a + 1 + pick(n - 1)) % n;
        return std::pair{a, b};
    };
    auto ancilla = [&]() { return free_ancillas[pick(free_ancillas.size())]; };

    std::vector<DualOp> circuit;
    const std::size_t qec_at = length / 2;
    for (std::size_t k = 0; k < length; ++k) {
        if (k == qec_at) {
            circuit.push_back(QecRoundOp{qec_ancilla});
            continue;
        }
        switch (pick(11)) {
            case 0:
                circuit.push_back(GateOp{LocalPhase{pick(ms), angle()}});
                break;
            case 1:
                circuit.push_back(GateOp{LocalPhase{layout.reference_mode(pick(layout.num_reference_modes)), angle()}});
                break;
            case 2: {
                auto [i, j] = distinct_pair(layout.num_modes());
                circuit.push_back(GateOp{DensityPhase{i, j, angle()}});
                break;
            }
            case 3: {
                auto [i, j] = distinct_pair(ms);
                circuit.push_back(GateOp{Tunneling{i, j, angle()}});
                break;
            }
            case 4: {
                auto [i, j] = distinct_pair(ms);
                circuit.push_back(GateOp{FSwap{i, j}});
                break;
            }
            case 5: {
                static constexpr QubitGateKind kinds[] = {
                    QubitGateKind::H, QubitGateKind::S, QubitGateKind::Sdg, QubitGateKind::T, QubitGateKind::X};
                circuit.push_back(GateOp{QubitGate{kinds[pick(5)], ancilla()}});
                break;
            }
            case 6:
                circuit.push_back(GateOp{MeasureQubit{ancilla(), pick(2) ? MeasureBasis::Y : MeasureBasis::Z}});
                break;
            case 7:
                circuit.push_back(DGate{pick(ms), angle(), pick(2) ? DVariant::D : DVariant::DPrime, std::nullopt});
                break;
            case 8:
                circuit.push_back(DGate{pick(ms), angle(), pick(2) ? DVariant::D : DVariant::DPrime, ancilla()});
                break;
            case 9: {
                auto [b, b2] = distinct_pair(blocks);
                circuit.push_back(LogicalGate{FSwapL{b, b2}});
                break;
            }
            default: {
                auto [b, b2] = distinct_pair(blocks);
                if (pick(2)) {
                    circuit.push_back(LogicalGate{TunnelL{b, b2, angle()}});
                } else {
                    circuit.push_back(LogicalGate{ControlledTunnelL{ancilla(), b, b2, angle()}});
                }
                break;
            }
        }
    }
    return circuit;
}

}  // namespace fermiref
