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
#include <vector>

#include "fermiref/fock.hpp"

namespace fermiref {

/// Which system-reference tunneling: D = exp(i theta (c + c^dagger)) or
/// D' = exp(i theta i(c^dagger - c)), its local-phase conjugate.
enum class DVariant { D, DPrime };

/// Reference occupation for n referenced fermions: reference modes 1..N-n filled.
std::uint64_t reference_basis_bits(const RegisterLayout &layout, std::size_t n);

/// Reference ladder R = sum_j (1 - eta_{j+1}) r_j eta_{j-1}, with eta_0 = 1 and
/// eta_{M_r+1} = 0. Physical backend only; the output may be unnormalized or zero.
SparseState apply_R(const SparseState &state);
SparseState apply_R_dagger(const SparseState &state);

/// Referenced fermion operators c_i = R^dagger s_i and c_i^dagger = s_i^dagger R.
///
/// Both backends are supported. In the compressed backend the result is only meaningful for
/// states in H, where c_i and c_i^dagger reduce to a sign (-1)^(N-1) times the system-mode
/// ladder action.
SparseState apply_c(const SparseState &state, std::size_t i);
SparseState apply_c_dagger(const SparseState &state, std::size_t i);

/// True iff every label's reference part is the pattern fixed by its system popcount.
bool is_in_H(const SparseState &state);

/// Throws std::invalid_argument naming `what` unless is_in_H(state).
void require_in_H(const SparseState &state, const char *what);

/// cos(theta) psi + i sin(theta) (c_i + c_i^dagger) psi. Refuses states outside H.
SparseState apply_D_exact(const SparseState &state, std::size_t i, double theta);

/// Elementary gates realizing D_i(theta) on H, in application order. Each reference mode k
/// contributes two tunnelings between s_i and r_k and four density phases with its
/// neighbours, so the sequence has 6 M_r gates. The eta_{M_r+1} = 0 boundary factor is the
/// identity and is emitted as a zero-angle local phase to keep the count uniform.
std::vector<GateOp> D_decomposition(const RegisterLayout &layout, std::size_t i, double theta);

/// Applies D_decomposition. Physical backend only.
void apply_D_decomposed(SparseState &state, std::size_t i, double theta);

/// D'_i(theta) = P_i(pi/2) D_i(theta) P_i(-pi/2) with P_i(phi) = exp(i phi n_i).
/// The exact path refuses states outside H; the decomposed path wraps D_decomposition.
SparseState apply_D_prime(const SparseState &state, std::size_t i, double theta);
std::vector<GateOp> D_prime_decomposition(const RegisterLayout &layout, std::size_t i, double theta);

/// Dispatches on the variant; exact closed form.
SparseState apply_D_variant(const SparseState &state, std::size_t i, double theta, DVariant variant);

/// Multiplies each amplitude by exp(i eps * (reference popcount)).
void apply_global_reference_phase(SparseState &state, double eps);

}  // namespace fermiref
