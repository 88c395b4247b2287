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

#include <array>
#include <cstddef>
#include <vector>

#include "fermiref/codes.hpp"
#include "fermiref/fock.hpp"
#include "fermiref/reference.hpp"

namespace fermiref {

/// Independent exp(i pi n) phase errors, one Bernoulli(p) draw per target mode.
struct NoiseSpec {
    double p = 0.0;
    /// Empty means every system mode.
    std::vector<std::size_t> targets;
    /// Adds every reference mode to the targets.
    bool include_reference = false;
};

/// Samples one error layer and returns the struck modes. Draws exactly one uniform per target.
std::vector<std::size_t> sample_phase_error_layer(SparseState &state, const NoiseSpec &spec, Rng &rng);

/// How controlled D gates are executed: the closed form on H, or the elementary-gate
/// decomposition under a controlled composite (physical backend only).
enum class DPath { Exact, Decomposed };

/// |1><1|_a (x) D_i(theta) + |0><0|_a (x) 1. The |1>_a component must lie in H.
void controlled_D(SparseState &state, std::size_t a, std::size_t i, double theta, DVariant variant, DPath path = DPath::Exact);

struct BlockSyndrome {
    int s12 = 1;
    int s23 = 1;
    bool operator==(const BlockSyndrome &) const = default;
};
using Syndrome = std::vector<BlockSyndrome>;

/// Phase-error correction on one block: none, p1, p2 or p3.
enum class Correction { None, P1, P2, P3 };

std::string to_string(Correction c);

/// The decode lookup: (+1,+1) none, (-1,+1) p1, (-1,-1) p2, (+1,-1) p3.
inline constexpr std::array<std::pair<Correction, BlockSyndrome>, 4> kDecodeTable{{
    {Correction::None, {+1, +1}},
    {Correction::P1, {-1, +1}},
    {Correction::P2, {-1, -1}},
    {Correction::P3, {+1, -1}},
}};

Correction decode(const BlockSyndrome &s);

/// Regenerates the decode table by injecting each correction operator on single-block
/// codewords and evaluating both stabilizers. Throws std::logic_error if a syndrome is not
/// exactly +-1 or the map is not injective.
std::array<std::pair<Correction, BlockSyndrome>, 4> brute_force_syndrome_table();

struct StabilizerOutcome {
    /// Stabilizer eigenvalue the state was projected onto.
    int eigenvalue = 1;
    /// Raw ancilla Z value; the measurement circuit leaves |0>_a on the -1 eigenspace.
    int ancilla_z = -1;
};

/// Runs H_a x C_aD_2(pi/2) x S_a^dag x C_aD_1(pi/2) x H_a (rightmost first; D' on modes 2, 3
/// for S23), measures the ancilla in Z and resets it to |0>. The ancilla must start in |0>.
StabilizerOutcome measure_stabilizer(
    SparseState &state, std::size_t b, Stabilizer which, std::size_t ancilla, Rng &rng, DPath path = DPath::Exact);

/// Measures S12 and S23 on every block and applies the decoded correction.
Syndrome qec_round(SparseState &state, std::size_t ancilla, Rng &rng, DPath path = DPath::Exact);

void apply_correction(SparseState &state, std::size_t b, Correction c);

/// Re-encoding after a reference-number measurement on a fixed-N_L logical state.
///
/// The N_R measurement projects each logical basis state |j> onto a fixed system count n.
/// Within a fixed-N_L sector the projected vectors Pi_n|j> are mutually orthogonal and share
/// one norm, so the map Pi_n|j>/||Pi_n|j>|| -> |j> is an isometry that restores the logical
/// state exactly. The logical basis of the sector is built once per instance.
class ReferenceRecovery {
   public:
    ReferenceRecovery(const RegisterLayout &layout, BackendKind backend, int logical_number);

    int logical_number() const {
        return logical_number_;
    }

    /// Measures N_R on the reference modes (one uniform draw) and re-encodes in place.
    /// Returns the measured N_R.
    std::size_t recover(SparseState &state, Rng &rng) const;

    /// Re-encodes a state already projected onto system count n.
    void reencode(SparseState &state, std::size_t n) const;

   private:
    RegisterLayout layout_;
    BackendKind backend_;
    int logical_number_;
    std::vector<SparseState> basis_;
};

/// Sum over blocks of the block parity; throws std::invalid_argument if the labels disagree
/// (the state is not a fixed-N_L state).
int logical_number_of(const SparseState &state);

/// Builds a ReferenceRecovery for the state's sector and applies it.
std::size_t measure_reference_and_recover(SparseState &state, Rng &rng);

/// Loss channel on the Steane modes: index 0 is sqrt(1-7p) 1, 1..7 are sqrt(p) s_i and 8..14
/// are sqrt(p)(1 - n_i). Throws std::invalid_argument unless 0 < p < 1/7.
std::vector<Operator> loss_kraus_operators(const SteaneCode &code, double p);

/// Applies Kraus operator `which` (unnormalized result). Physical backend.
SparseState apply_loss_kraus(const SparseState &state, const SteaneCode &code, std::size_t which, double p);

}  // namespace fermiref
