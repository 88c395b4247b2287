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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <variant>
#include <vector>

namespace fermiref {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPruneThreshold = 1e-14;

/// Draws one uniform variate in [0, 1) with 53 bits of resolution.
double uniform01(Rng &rng);

/// Physical: every label carries explicit reference bits.
/// Compressed: reference bits are implied by the number of occupied system modes.
enum class BackendKind { Physical, Compressed };

std::string to_string(BackendKind kind);

/// Mode bookkeeping for a register of system modes, reference modes and ancilla qubits.
///
/// Canonical fermionic ordering: system modes 0..M_s-1 (block-major), then reference
/// modes r_0..r_{M_r-1} at indices M_s..M_s+M_r-1. Ancilla qubits are not fermionic and
/// are stored in a separate bit field.
struct RegisterLayout {
    std::size_t num_system_modes = 0;
    std::size_t num_reference_modes = 0;
    std::size_t total_atoms = 0;
    std::size_t num_ancilla_qubits = 0;
    std::size_t block_size = 3;

    /// Builds and validates a layout. Throws std::invalid_argument on violated invariants.
    static RegisterLayout make(
        std::size_t system_modes,
        std::size_t reference_modes,
        std::size_t atoms,
        std::size_t ancillas,
        std::size_t block_size = 3);

    void validate() const;

    std::size_t num_modes() const {
        return num_system_modes + num_reference_modes;
    }
    std::size_t num_blocks() const {
        return num_system_modes / block_size;
    }
    /// Canonical index of reference mode j (0-based).
    std::size_t reference_mode(std::size_t j) const;
    bool is_system_mode(std::size_t mode) const {
        return mode < num_system_modes;
    }
    bool is_reference_mode(std::size_t mode) const {
        return mode >= num_system_modes && mode < num_modes();
    }
    std::uint64_t system_mask() const;
    std::uint64_t reference_mask() const;

    bool operator==(const RegisterLayout &) const = default;
};

/// Occupation bitstring over the fermionic modes plus the ancilla-qubit bits.
struct BasisLabel {
    std::uint64_t modes = 0;
    std::uint32_t qubits = 0;

    bool mode(std::size_t k) const {
        return (modes >> k) & 1U;
    }
    bool qubit(std::size_t a) const {
        return (qubits >> a) & 1U;
    }
    bool operator==(const BasisLabel &) const = default;
};

struct BasisLabelHash {
    std::size_t operator()(const BasisLabel &label) const noexcept;
};

/// Sparse state vector keyed by basis label.
///
/// In the compressed backend the stored mode bits cover the system modes only; the
/// reference occupation is the pattern fixed by the referenced-fermion count.
class SparseState {
   public:
    using Map = std::unordered_map<BasisLabel, Complex, BasisLabelHash>;

    SparseState() = default;
    explicit SparseState(RegisterLayout layout, BackendKind backend = BackendKind::Physical);

    /// The normalized basis state |label>.
    static SparseState basis(RegisterLayout layout, BackendKind backend, BasisLabel label);

    const RegisterLayout &layout() const {
        return layout_;
    }
    BackendKind backend() const {
        return backend_;
    }

    Complex amplitude(const BasisLabel &label) const;
    void add(const BasisLabel &label, Complex value);
    void set(const BasisLabel &label, Complex value);
    void clear() {
        entries_.clear();
    }
    void reserve(std::size_t n) {
        entries_.reserve(n);
    }

    std::size_t size() const {
        return entries_.size();
    }
    bool empty() const {
        return entries_.empty();
    }
    Map::const_iterator begin() const {
        return entries_.begin();
    }
    Map::const_iterator end() const {
        return entries_.end();
    }
    Map::iterator begin() {
        return entries_.begin();
    }
    Map::iterator end() {
        return entries_.end();
    }

    double norm_squared() const;
    double norm() const;
    /// Rescales to unit norm. Throws std::domain_error on a zero vector.
    void normalize();
    void prune(double threshold = kPruneThreshold);
    /// Same layout and backend, no entries.
    SparseState empty_like() const;

    template <typename Pred>
    void erase_if(Pred pred) {
        std::erase_if(entries_, pred);
    }

    SparseState &operator+=(const SparseState &other);
    SparseState &operator-=(const SparseState &other);
    SparseState &operator*=(Complex factor);

    /// Bit pattern over all fermionic modes (reference bits expanded in the compressed backend).
    std::uint64_t full_modes(const BasisLabel &label) const;

   private:
    void check_compatible(const SparseState &other) const;

    RegisterLayout layout_{};
    BackendKind backend_ = BackendKind::Physical;
    Map entries_;
};

SparseState operator+(SparseState a, const SparseState &b);
SparseState operator-(SparseState a, const SparseState &b);
SparseState operator*(Complex factor, SparseState state);

/// <a|b>
Complex inner_product(const SparseState &a, const SparseState &b);
/// |<a|b>|^2 / (<a|a><b|b>); insensitive to global phase.
double fidelity(const SparseState &a, const SparseState &b);
/// ||a - b||
double distance(const SparseState &a, const SparseState &b);

/// Reference occupation (bits at canonical positions) of the state |N - n>_R.
std::uint64_t reference_pattern(const RegisterLayout &layout, std::size_t referenced);

int popcount(std::uint64_t bits);

/// (-1)^(number of occupied fermionic modes strictly before `mode`).
int jw_sign(const SparseState &state, const BasisLabel &label, std::size_t mode);
int jw_sign(const RegisterLayout &layout, std::uint64_t full_modes, std::size_t mode);

/// Bare ladder operators f_mode, f_mode^dagger and the density n_mode (not unitary).
/// Annihilation and creation change the atom count, so they need the physical backend.
SparseState apply_annihilate(const SparseState &state, std::size_t mode);
SparseState apply_create(const SparseState &state, std::size_t mode);
SparseState apply_number(const SparseState &state, std::size_t mode);

// ---------------------------------------------------------------------------------------
// Elementary gate set.

enum class QubitGateKind { H, S, Sdg, T, Z, X, Phase, CZ };
enum class MeasureBasis { Z, Y };

struct LocalPhase {
    std::size_t mode;
    double angle;
};
struct DensityPhase {
    std::size_t mode_a;
    std::size_t mode_b;
    double angle;
};
struct Tunneling {
    std::size_t mode_a;
    std::size_t mode_b;
    double angle;
};
struct FSwap {
    std::size_t mode_a;
    std::size_t mode_b;
};
struct QubitGate {
    QubitGateKind kind;
    std::size_t qubit;
    std::size_t partner = 0;  // second qubit for CZ
    double angle = 0.0;       // Phase only
};
struct MeasureQubit {
    std::size_t qubit;
    MeasureBasis basis = MeasureBasis::Z;
};
struct MeasureModeNumber {
    std::vector<std::size_t> modes;
};

struct GateOp;

/// Applies `body` to the |1>_control component only.
struct ControlledComposite {
    std::size_t control;
    std::vector<GateOp> body;
};

struct GateOp {
    using Variant = std::variant<
        LocalPhase,
        DensityPhase,
        Tunneling,
        FSwap,
        QubitGate,
        ControlledComposite,
        MeasureQubit,
        MeasureModeNumber>;
    Variant op;

    template <typename T>
        requires(!std::is_same_v<std::decay_t<T>, GateOp>)
    GateOp(T value) : op(std::move(value)) {
    }
};

std::string describe(const GateOp &gate);

void apply_local_phase(SparseState &state, std::size_t mode, double angle);
void apply_density_phase(SparseState &state, std::size_t mode_a, std::size_t mode_b, double angle);
void apply_tunneling(SparseState &state, std::size_t mode_a, std::size_t mode_b, double angle);
void apply_fswap(SparseState &state, std::size_t mode_a, std::size_t mode_b);
void apply_qubit_gate(SparseState &state, const QubitGate &gate);

/// Projective measurement; returns +1 / -1. Draws exactly one uniform variate.
int measure_qubit(SparseState &state, std::size_t qubit, MeasureBasis basis, Rng &rng);

/// Samples the total occupation of `modes` and projects onto that sector. Draws exactly
/// one uniform variate.
std::size_t measure_mode_number(SparseState &state, std::span<const std::size_t> modes, Rng &rng);

/// Applies any gate. Returns the outcome for measurements.
std::optional<long> apply_gate(SparseState &state, const GateOp &gate, Rng &rng);
/// Unitary gates only; throws std::invalid_argument on a measurement.
void apply_unitary(SparseState &state, const GateOp &gate);
void apply_unitaries(SparseState &state, std::span<const GateOp> gates);

/// Runs `body` on the part of the state with qubit `control` set; the rest is untouched.
template <typename F>
void apply_controlled(SparseState &state, std::size_t control, F &&body) {
    SparseState on = state.empty_like();
    SparseState off = state.empty_like();
    for (const auto &[label, amp] : state) {
        (label.qubit(control) ? on : off).add(label, amp);
    }
    if (on.empty()) {
        return;
    }
    body(on);
    for (const auto &[label, amp] : on) {
        off.add(label, amp);
    }
    off.prune();
    state = std::move(off);
}

}  // namespace fermiref
