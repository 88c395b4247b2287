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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fermiref/fock.hpp"
#include "fermiref/logical.hpp"
#include "fermiref/reference.hpp"

namespace fermiref {

/// Drops the reference bits of every label. Throws std::invalid_argument outside H.
SparseState compress(const SparseState &physical);

/// Re-attaches the reference pattern fixed by each label's system popcount.
SparseState decompress(const SparseState &compressed, const RegisterLayout &layout);

/// D_i(theta) or D'_i(theta), optionally controlled on an ancilla. The physical backend runs
/// the elementary-gate decomposition, the compressed backend the closed form.
struct DGate {
    std::size_t mode;
    double theta;
    DVariant variant = DVariant::D;
    std::optional<std::size_t> control;
};

/// One full qec_round using `ancilla` (which must be |0> when the op runs).
struct QecRoundOp {
    std::size_t ancilla;
};

using DualOp = std::variant<GateOp, DGate, LogicalGate, QecRoundOp>;

std::string describe(const DualOp &op);

/// Applies one op in the state's backend; returns measurement outcomes in order.
std::vector<long> apply_dual_op(SparseState &state, const DualOp &op, Rng &rng);

struct DualReport {
    /// Largest |amplitude difference| between compress(physical) and the compressed run.
    double max_deviation = 0.0;
    std::size_t ops_run = 0;
    /// Index of the first op after which the physical state left H.
    std::optional<std::size_t> failed_op;
    std::string message;
    bool outcomes_match = true;
};

/// Runs the circuit from `initial` (physical, in H) in both backends with identically seeded
/// generators and compares the final states.
DualReport run_dual(const std::vector<DualOp> &circuit, const SparseState &initial, std::uint64_t seed);

/// Largest |a(x) - b(x)| over the union of labels (states must share a backend).
double max_amplitude_deviation(const SparseState &a, const SparseState &b);

/// Random H-preserving circuit of `length` ops on a register with at least two blocks and two
/// ancillas. Ancilla `qec_ancilla` is reserved for one QecRoundOp placed mid-circuit; other
/// ops include system and reference phases, system tunnelings and fswaps, ancilla gates and
/// measurements, plain and controlled D gates, and logical fswaps and tunnelings.
std::vector<DualOp> random_dual_circuit(const RegisterLayout &layout, std::size_t length, Rng &rng, std::size_t qec_ancilla = 0);

}  // namespace fermiref
