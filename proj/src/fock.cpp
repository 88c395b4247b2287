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

#include "fermiref/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace fermiref {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::uint64_t low_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

void check_mode(const RegisterLayout &layout, std::size_t mode) {
    if (mode >= layout.num_modes()) {
        throw std::out_of_range(fmt::format("mode index {} out of range (register has {} modes)", mode, layout.num_modes()));
    }
}

void check_qubit(const RegisterLayout &layout, std::size_t qubit) {
    if (qubit >= layout.num_ancilla_qubits) {
        throw std::out_of_range(
            fmt::format("ancilla index {} out of range (register has {} ancillas)", qubit, layout.num_ancilla_qubits));
    }
}

void check_pair(const RegisterLayout &layout, std::size_t a, std::size_t b) {
    check_mode(layout, a);
    check_mode(layout, b);
    if (a == b) {
        throw std::invalid_argument(fmt::format("two-mode gate needs distinct modes, got {} twice", a));
    }
}

// Occupied modes strictly between a and b.
int between_parity(std::uint64_t full, std::size_t a, std::size_t b) {
    auto lo = std::min(a, b);
    auto hi = std::max(a, b);
    std::uint64_t mask = low_mask(hi) & ~low_mask(lo + 1);
    return popcount(full & mask) & 1;
}

// Two-mode gates in the compressed backend need both modes inside the system block.
void require_system_pair(const SparseState &state, std::size_t a, std::size_t b, const char *what) {
    if (state.backend() == BackendKind::Compressed &&
        !(state.layout().is_system_mode(a) && state.layout().is_system_mode(b))) {
        throw std::invalid_argument(
            fmt::format("{} between modes {} and {} needs explicit reference bits (physical backend)", what, a, b));
    }
}

}  // namespace

double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string to_string(BackendKind kind) {
    return kind == BackendKind::Physical ? "physical" : "compressed";
}

int popcount(std::uint64_t bits) {
    return std::popcount(bits);
}

// ---------------------------------------------------------------------------------------
// RegisterLayout

RegisterLayout RegisterLayout::make(
    std::size_t system_modes, std::size_t reference_modes, std::size_t atoms, std::size_t ancillas, std::size_t block) {
    RegisterLayout layout{system_modes, reference_modes, atoms, ancillas, block};
    layout.validate();
    return layout;
}

void RegisterLayout::validate() const {
    if (block_size == 0 || num_system_modes % block_size != 0) {
        throw std::invalid_argument(
            fmt::format("{} system modes do not split into blocks of {}", num_system_modes, block_size));
    }
    if (num_reference_modes < total_atoms) {
        throw std::invalid_argument(
            fmt::format("reference with {} modes cannot hold {} atoms", num_reference_modes, total_atoms));
    }
    if (num_modes() > 64) {
        throw std::invalid_argument(fmt::format("{} fermionic modes exceed the 64-bit label", num_modes()));
    }
    if (num_ancilla_qubits > 32) {
        throw std::invalid_argument(fmt::format("{} ancillas exceed the 32-bit label", num_ancilla_qubits));
    }
}

std::size_t RegisterLayout::reference_mode(std::size_t j) const {
    if (j >= num_reference_modes) {
        throw std::out_of_range(fmt::format("reference index {} out of range ({} reference modes)", j, num_reference_modes));
    }
    return num_system_modes + j;
}

std::uint64_t RegisterLayout::system_mask() const {
    return low_mask(num_system_modes);
}

std::uint64_t RegisterLayout::reference_mask() const {
    return low_mask(num_modes()) & ~system_mask();
}

std::size_t BasisLabelHash::operator()(const BasisLabel &label) const noexcept {
    std::uint64_t h = label.modes * 0x9E3779B97F4A7C15ULL;
    h ^= (static_cast<std::uint64_t>(label.qubits) + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
}

std::uint64_t reference_pattern(const RegisterLayout &layout, std::size_t referenced) {
    if (referenced > layout.total_atoms) {
        throw std::out_of_range(
            fmt::format("{} referenced fermions exceed the {} atoms in the register", referenced, layout.total_atoms));
    }
    return low_mask(layout.total_atoms - referenced) << layout.num_system_modes;
}

// ---------------------------------------------------------------------------------------
// SparseState

SparseState::SparseState(RegisterLayout layout, BackendKind backend) : layout_(layout), backend_(backend) {
    layout_.validate();
}

SparseState SparseState::basis(RegisterLayout layout, BackendKind backend, BasisLabel label) {
    SparseState state(layout, backend);
    state.set(label, 1.0);
    return state;
}

Complex SparseState::amplitude(const BasisLabel &label) const {
    auto it = entries_.find(label);
    return it == entries_.end() ? Complex{} : it->second;
}

void SparseState::add(const BasisLabel &label, Complex value) {
    entries_[label] += value;
}

void SparseState::set(const BasisLabel &label, Complex value) {
    entries_[label] = value;
}

double SparseState::norm_squared() const {
    double total = 0.0;
    for (const auto &[label, amp] : entries_) {
        total += std::norm(amp);
    }
    return total;
}

double SparseState::norm() const {
    return std::sqrt(norm_squared());
}

void SparseState::normalize() {
    double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize a zero vector");
    }
    *this *= 1.0 / n;
}

void SparseState::prune(double threshold) {
    std::erase_if(entries_, [threshold](const auto &kv) { return std::abs(kv.second) < threshold; });
}

SparseState SparseState::empty_like() const {
    SparseState out;
    out.layout_ = layout_;
    out.backend_ = backend_;
    return out;
}

void SparseState::check_compatible(const SparseState &other) const {
    if (!(layout_ == other.layout_) || backend_ != other.backend_) {
        throw std::invalid_argument("states live on different registers or backends");
    }
}

SparseState &SparseState::operator+=(const SparseState &other) {
    check_compatible(other);
    for (const auto &[label, amp] : other.entries_) {
        entries_[label] += amp;
    }
    return *this;
}

SparseState &SparseState::operator-=(const SparseState &other) {
    check_compatible(other);
    for (const auto &[label, amp] : other.entries_) {
        entries_[label] -= amp;
    }
    return *this;
}

SparseState &SparseState::operator*=(Complex factor) {
    for (auto &[label, amp] : entries_) {
        amp *= factor;
    }
    return *this;
}

std::uint64_t SparseState::full_modes(const BasisLabel &label) const {
    if (backend_ == BackendKind::Physical) {
        return label.modes;
    }
    return label.modes | reference_pattern(layout_, static_cast<std::size_t>(popcount(label.modes)));
}

SparseState operator+(SparseState a, const SparseState &b) {
    a += b;
    return a;
}

SparseState operator-(SparseState a, const SparseState &b) {
    a -= b;
    return a;
}

SparseState operator*(Complex factor, SparseState state) {
    state *= factor;
    return state;
}

Complex inner_product(const SparseState &a, const SparseState &b) {
    const SparseState &small = a.size() <= b.size() ? a : b;
    const SparseState &large = a.size() <= b.size() ? b : a;
    Complex total{};
    for (const auto &[label, amp] : small) {
        Complex other = large.amplitude(label);
        total += &small == &a ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return total;
}

double fidelity(const SparseState &a, const SparseState &b) {
    double na = a.norm_squared();
    double nb = b.norm_squared();
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::norm(inner_product(a, b)) / (na * nb);
}

double distance(const SparseState &a, const SparseState &b) {
    return (a - b).norm();
}

int jw_sign(const RegisterLayout &layout, std::uint64_t full_modes, std::size_t mode) {
    check_mode(layout, mode);
    return (popcount(full_modes & low_mask(mode)) & 1) ? -1 : 1;
}

int jw_sign(const SparseState &state, const BasisLabel &label, std::size_t mode) {
    return jw_sign(state.layout(), state.full_modes(label), mode);
}

namespace {

SparseState ladder(const SparseState &state, std::size_t mode, bool create) {
    check_mode(state.layout(), mode);
    if (state.backend() != BackendKind::Physical) {
        throw std::invalid_argument("bare ladder operators need the physical backend");
    }
    const std::uint64_t bit = std::uint64_t{1} << mode;
    SparseState out = state.empty_like();
    out.reserve(state.size());
    for (const auto &[label, amp] : state) {
        if (static_cast<bool>(label.modes & bit) == create) {
            continue;
        }
        double sign = jw_sign(state.layout(), label.modes, mode);
        out.add(BasisLabel{label.modes ^ bit, label.qubits}, sign * amp);
    }
    return out;
}

}  // namespace

SparseState apply_annihilate(const SparseState &state, std::size_t mode) {
    return ladder(state, mode, false);
}

SparseState apply_create(const SparseState &state, std::size_t mode) {
    return ladder(state, mode, true);
}

SparseState apply_number(const SparseState &state, std::size_t mode) {
    check_mode(state.layout(), mode);
    const std::uint64_t bit = std::uint64_t{1} << mode;
    SparseState out = state.empty_like();
    for (const auto &[label, amp] : state) {
        if (state.full_modes(label) & bit) {
            out.add(label, amp);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Gates

std::string describe(const GateOp &gate) {
    return std::visit(
        [](const auto &g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, LocalPhase>) {
                return fmt::format("phase(n{}, {:.6g})", g.mode, g.angle);
            } else if constexpr (std::is_same_v<T, DensityPhase>) {
                return fmt::format("density(n{} n{}, {:.6g})", g.mode_a, g.mode_b, g.angle);
            } else if constexpr (std::is_same_v<T, Tunneling>) {
                return fmt::format("tunnel({}, {}, {:.6g})", g.mode_a, g.mode_b, g.angle);
            } else if constexpr (std::is_same_v<T, FSwap>) {
                return fmt::format("fswap({}, {})", g.mode_a, g.mode_b);
            } else if constexpr (std::is_same_v<T, QubitGate>) {
                return fmt::format("qubit_gate({}, a{})", static_cast<int>(g.kind), g.qubit);
            } else if constexpr (std::is_same_v<T, ControlledComposite>) {
                return fmt::format("controlled(a{}, {} ops)", g.control, g.body.size());
            } else if constexpr (std::is_same_v<T, MeasureQubit>) {
                return fmt::format("measure(a{}, {})", g.qubit, g.basis == MeasureBasis::Z ? "Z" : "Y");
            } else {
                return fmt::format("measure_number({} modes)", g.modes.size());
            }
        },
        gate.op);
}

void apply_local_phase(SparseState &state, std::size_t mode, double angle) {
    check_mode(state.layout(), mode);
    const Complex phase = std::polar(1.0, angle);
    const std::uint64_t bit = std::uint64_t{1} << mode;
    const bool implied = state.backend() == BackendKind::Compressed && state.layout().is_reference_mode(mode);
    for (auto &[label, amp] : state) {
        std::uint64_t bits = implied ? state.full_modes(label) : label.modes;
        if (bits & bit) {
            amp *= phase;
        }
    }
}

void apply_density_phase(SparseState &state, std::size_t mode_a, std::size_t mode_b, double angle) {
    check_pair(state.layout(), mode_a, mode_b);
    const Complex phase = std::polar(1.0, angle);
    const std::uint64_t both = (std::uint64_t{1} << mode_a) | (std::uint64_t{1} << mode_b);
    for (auto &[label, amp] : state) {
        if ((state.full_modes(label) & both) == both) {
            amp *= phase;
        }
    }
}

void apply_tunneling(SparseState &state, std::size_t mode_a, std::size_t mode_b, double angle) {
    check_pair(state.layout(), mode_a, mode_b);
    require_system_pair(state, mode_a, mode_b, "tunneling");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const std::uint64_t flip = (std::uint64_t{1} << mode_a) | (std::uint64_t{1} << mode_b);
    SparseState out = state.empty_like();
    out.reserve(state.size() * 2);
    for (const auto &[label, amp] : state) {
        if (label.mode(mode_a) == label.mode(mode_b)) {
            out.add(label, amp);
            continue;
        }
        BasisLabel partner{label.modes ^ flip, label.qubits};
        double sign = between_parity(label.modes, mode_a, mode_b) ? -1.0 : 1.0;
        out.add(label, c * amp);
        out.add(partner, Complex{0.0, sign * s} * amp);
    }
    out.prune();
    state = std::move(out);
}

void apply_fswap(SparseState &state, std::size_t mode_a, std::size_t mode_b) {
    check_pair(state.layout(), mode_a, mode_b);
    require_system_pair(state, mode_a, mode_b, "fswap");
    const std::uint64_t flip = (std::uint64_t{1} << mode_a) | (std::uint64_t{1} << mode_b);
    SparseState out = state.empty_like();
    out.reserve(state.size());
    for (const auto &[label, amp] : state) {
        bool a = label.mode(mode_a);
        bool b = label.mode(mode_b);
        if (a == b) {
            out.add(label, a ? -amp : amp);
        } else {
            double sign = between_parity(label.modes, mode_a, mode_b) ? -1.0 : 1.0;
            out.add(BasisLabel{label.modes ^ flip, label.qubits}, sign * amp);
        }
    }
    state = std::move(out);
}

void apply_qubit_gate(SparseState &state, const QubitGate &gate) {
    const auto &layout = state.layout();
    check_qubit(layout, gate.qubit);
    const std::uint32_t bit = std::uint32_t{1} << gate.qubit;

    auto diagonal = [&](Complex phase) {
        for (auto &[label, amp] : state) {
            if (label.qubits & bit) {
                amp *= phase;
            }
        }
    };

    switch (gate.kind) {
        case QubitGateKind::S:
            diagonal({0.0, 1.0});
            return;
        case QubitGateKind::Sdg:
            diagonal({0.0, -1.0});
            return;
        case QubitGateKind::T:
            diagonal(std::polar(1.0, kPi / 4));
            return;
        case QubitGateKind::Z:
            diagonal(-1.0);
            return;
        case QubitGateKind::Phase:
            diagonal(std::polar(1.0, gate.angle));
            return;
        case QubitGateKind::CZ: {
            check_qubit(layout, gate.partner);
            if (gate.partner == gate.qubit) {
                throw std::invalid_argument("CZ needs two distinct ancillas");
            }
            const std::uint32_t both = bit | (std::uint32_t{1} << gate.partner);
            for (auto &[label, amp] : state) {
                if ((label.qubits & both) == both) {
                    amp = -amp;
                }
            }
            return;
        }
        case QubitGateKind::X: {
            SparseState out = state.empty_like();
            out.reserve(state.size());
            for (const auto &[label, amp] : state) {
                out.add(BasisLabel{label.modes, label.qubits ^ bit}, amp);
            }
            state = std::move(out);
            return;
        }
        case QubitGateKind::H: {
            SparseState out = state.empty_like();
            out.reserve(state.size() * 2);
            for (const auto &[label, amp] : state) {
                BasisLabel zero{label.modes, label.qubits & ~bit};
                BasisLabel one{label.modes, label.qubits | bit};
                Complex v = kInvSqrt2 * amp;
                out.add(zero, v);
                out.add(one, (label.qubits & bit) ? -v : v);
            }
            out.prune();
            state = std::move(out);
            return;
        }
    }
}

int measure_qubit(SparseState &state, std::size_t qubit, MeasureBasis basis, Rng &rng) {
    check_qubit(state.layout(), qubit);
    if (basis == MeasureBasis::Y) {
        apply_qubit_gate(state, {QubitGateKind::Sdg, qubit});
        apply_qubit_gate(state, {QubitGateKind::H, qubit});
    }
    double p0 = 0.0;
    double total = 0.0;
    for (const auto &[label, amp] : state) {
        double w = std::norm(amp);
        total += w;
        if (!label.qubit(qubit)) {
            p0 += w;
        }
    }
    if (total == 0.0) {
        throw std::runtime_error("measurement on a zero vector");
    }
    double r = uniform01(rng);
    bool one = r >= p0 / total;
    double kept = one ? total - p0 : p0;
    if (kept <= 1e-28 * total) {
        // Rounding picked an empty branch; take the other one.
        one = !one;
        kept = total - kept;
    }
    if (kept <= 0.0) {
        throw std::runtime_error("measurement projected onto a zero-norm branch");
    }
    state.erase_if([&](const auto &kv) { return kv.first.qubit(qubit) != one; });
    state *= 1.0 / std::sqrt(kept);
    if (basis == MeasureBasis::Y) {
        apply_qubit_gate(state, {QubitGateKind::H, qubit});
        apply_qubit_gate(state, {QubitGateKind::S, qubit});
    }
    return one ? -1 : 1;
}

std::size_t measure_mode_number(SparseState &state, std::span<const std::size_t> modes, Rng &rng) {
    if (modes.empty()) {
        throw std::invalid_argument("mode-number measurement needs a non-empty mode set");
    }
    std::uint64_t mask = 0;
    for (auto m : modes) {
        check_mode(state.layout(), m);
        mask |= std::uint64_t{1} << m;
    }
    std::map<std::size_t, double> weights;
    double total = 0.0;
    for (const auto &[label, amp] : state) {
        double w = std::norm(amp);
        weights[static_cast<std::size_t>(popcount(state.full_modes(label) & mask))] += w;
        total += w;
    }
    if (total == 0.0) {
        throw std::runtime_error("measurement on a zero vector");
    }
    double r = uniform01(rng) * total;
    std::size_t outcome = weights.rbegin()->first;
    double acc = 0.0;
    for (const auto &[count, w] : weights) {
        acc += w;
        if (r < acc && w > 1e-28 * total) {
            outcome = count;
            break;
        }
    }
    double kept = weights[outcome];
    state.erase_if([&](const auto &kv) {
        return static_cast<std::size_t>(popcount(state.full_modes(kv.first) & mask)) != outcome;
    });
    state *= 1.0 / std::sqrt(kept);
    return outcome;
}

void apply_unitary(SparseState &state, const GateOp &gate) {
    std::visit(
        [&state](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, LocalPhase>) {
                apply_local_phase(state, g.mode, g.angle);
            } else if constexpr (std::is_same_v<T, DensityPhase>) {
                apply_density_phase(state, g.mode_a, g.mode_b, g.angle);
            } else if constexpr (std::is_same_v<T, Tunneling>) {
                apply_tunneling(state, g.mode_a, g.mode_b, g.angle);
            } else if constexpr (std::is_same_v<T, FSwap>) {
                apply_fswap(state, g.mode_a, g.mode_b);
            } else if constexpr (std::is_same_v<T, QubitGate>) {
                apply_qubit_gate(state, g);
            } else if constexpr (std::is_same_v<T, ControlledComposite>) {
                check_qubit(state.layout(), g.control);
                apply_controlled(state, g.control, [&g](SparseState &part) { apply_unitaries(part, g.body); });
            } else {
                throw std::invalid_argument("measurement inside a unitary sequence");
            }
        },
        gate.op);
}

void apply_unitaries(SparseState &state, std::span<const GateOp> gates) {
    for (const auto &g : gates) {
        apply_unitary(state, g);
    }
}

std::optional<long> apply_gate(SparseState &state, const GateOp &gate, Rng &rng) {
    if (const auto *m = std::get_if<MeasureQubit>(&gate.op)) {
        return measure_qubit(state, m->qubit, m->basis, rng);
    }
    if (const auto *m = std::get_if<MeasureModeNumber>(&gate.op)) {
        return static_cast<long>(measure_mode_number(state, m->modes, rng));
    }
    apply_unitary(state, gate);
    return std::nullopt;
}

}  // namespace fermiref
