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
#include <functional>
#include <string>
#include <vector>

#include "fermiref/fock.hpp"

namespace fermiref {

/// A named linear map on states (error operators, Kraus operators). The adjoint is only
/// needed by the projector-form check.
struct Operator {
    std::string name;
    std::function<SparseState(const SparseState &)> apply;
    std::function<SparseState(const SparseState &)> apply_adjoint;
};

/// Three-mode repetition code: block b owns system modes 3b, 3b+1, 3b+2.
struct RepetitionCode {
    std::size_t num_blocks = 0;

    /// Uses every system mode of the layout. Throws if the block size is not 3.
    static RepetitionCode for_layout(const RegisterLayout &layout);

    /// Mode k (0, 1, 2) of block b.
    std::size_t mode(std::size_t b, std::size_t k) const {
        return 3 * b + k;
    }
    std::array<std::size_t, 3> modes(std::size_t b) const {
        return {3 * b, 3 * b + 1, 3 * b + 2};
    }
};

enum class Stabilizer { S12, S23 };

std::string to_string(Stabilizer which);

/// Normalized product of (1 + i c1^dag c2^dag - i c2^dag c3^dag + c1^dag c3^dag)/2 over all
/// blocks, acting on |Omega>. The |000> system component has positive real amplitude.
/// Needs N >= M_s.
SparseState prepare_logical_vacuum(const RegisterLayout &layout, BackendKind backend);

/// C = i[c1 c2 c3 + c1 c2^dag c3^dag + c1^dag c2 c3^dag + c1^dag c2^dag c3] on block b.
SparseState apply_logical_C(const SparseState &state, std::size_t b);
SparseState apply_logical_C_dagger(const SparseState &state, std::size_t b);

/// (C_{M_L}^dag)^{n_{M_L}} ... (C_1^dag)^{n_1} |0..0>_L, normalized.
SparseState logical_basis_state(const RegisterLayout &layout, BackendKind backend, const std::vector<int> &occupations);

/// S12 = i(c1 + c1^dag)(c2 + c2^dag), S23 = -i(c2 - c2^dag)(c3 - c3^dag) on block b.
SparseState apply_stabilizer(const SparseState &state, std::size_t b, Stabilizer which);

/// Re <psi|S|psi>.
double stabilizer_expectation(const SparseState &state, std::size_t b, Stabilizer which);

/// N_b = 4 n1 n2 n3 + n1 + n2 + n3 - 2 n1 n3 - 2 n2 n3 - 2 n1 n2 evaluated on a system bit
/// pattern. Equals 1 iff the block holds an odd number of fermions.
int logical_number_value(std::uint64_t system_bits, std::size_t b);

/// <psi|N_b|psi>; N_b is diagonal in the occupation basis.
double logical_number_expectation(const SparseState &state, std::size_t b);

/// Knill-Laflamme report. For kl_check, C[n][m] = <0_L|E_n^dag E_m|0_L>; the off-diagonal
/// violation is the largest |<i_L|E_n^dag E_m|j_L>| with i != j and the codeword dependence
/// is the largest deviation of a diagonal element from C. For the projector form, the
/// off-diagonal violation is the largest residual ||P E^dag E' P x - C P x|| over basis x.
struct KLReport {
    std::vector<std::vector<Complex>> C;
    double max_offdiagonal_violation = 0.0;
    double max_codeword_dependence = 0.0;
    bool pass = false;
};

inline constexpr double kKLTolerance = 1e-12;

/// Throws std::invalid_argument if the codewords are not orthonormal.
KLReport kl_check(const std::vector<SparseState> &codewords, const std::vector<Operator> &errors);

/// Phase errors p_i = 1 - 2 n_i on the three modes of block b, preceded by the identity.
std::vector<Operator> repetition_phase_errors(std::size_t b);

// ---------------------------------------------------------------------------------------
// Seven-mode Steane code on referenced fermions.

struct SteaneCode {
    /// The seven system modes carrying code modes 1..7.
    std::array<std::size_t, 7> modes{0, 1, 2, 3, 4, 5, 6};
    /// Supports (1-based code modes) of {4567}, {2367}, {1357}.
    static constexpr std::array<std::array<std::size_t, 4>, 3> kSupports{{{4, 5, 6, 7}, {2, 3, 6, 7}, {1, 3, 5, 7}}};

    /// M_s = N = 7, one block of seven modes. M_r = 8 so that K_i^dag K_0, which raises the
    /// atom number by one, still has a reference slot for the extra referenced fermion.
    static RegisterLayout layout();
};

/// Stabilizer index 0..2 are S^Z on kSupports, 3..5 are S^X on kSupports.
SparseState apply_steane_stabilizer(const SparseState &state, const SteaneCode &code, std::size_t index);

/// P = prod_X (1 + S^X)/2 prod_Z (1 + S^Z)/2 (Z factors act first).
SparseState apply_steane_projector(const SparseState &state, const SteaneCode &code);

/// Checks P K_a^dag K_b P = C_ab P over every basis vector of H for the given operators.
KLReport steane_projector_check(const SteaneCode &code, const std::vector<Operator> &kraus);

/// Same with the loss channel K_0 = sqrt(1-7p), K_i = sqrt(p) s_i, K_{i+7} = sqrt(p)(1 - n_i).
/// Throws std::invalid_argument unless 0 < p < 1/7.
KLReport steane_projector_check(const SteaneCode &code, double p);

}  // namespace fermiref
