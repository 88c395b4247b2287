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

#include <gtest/gtest.h>

#include "fermiref/random_states.hpp"
#include "oracle.hpp"

using namespace fermiref;

namespace {

RegisterLayout small_layout() {
    return RegisterLayout::make(3, 3, 3, 0);
}

SparseState omega(const RegisterLayout &layout, BackendKind backend = BackendKind::Physical) {
    std::uint64_t modes = backend == BackendKind::Physical ? reference_basis_bits(layout, 0) : 0;
    return SparseState::basis(layout, backend, {modes, 0});
}

// R = sum_j (1 - eta_{j+1}) r_j eta_{j-1} assembled from dense ladder matrices.
oracle::Matrix dense_R(const RegisterLayout &layout) {
    const std::size_t n = layout.num_modes();
    const std::size_t mr = layout.num_reference_modes;
    const oracle::Matrix id = oracle::Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
    auto eta = [&](std::size_t j) -> oracle::Matrix {
        if (j == 0) {
            return id;
        }
        if (j == mr + 1) {
            return oracle::Matrix::Zero(id.rows(), id.cols());
        }
        return oracle::number(n, layout.reference_mode(j - 1));
    };
    oracle::Matrix R = oracle::Matrix::Zero(id.rows(), id.cols());
    for (std::size_t j = 1; j <= mr; ++j) {
        R += (id - eta(j + 1)) * oracle::annihilator(n, layout.reference_mode(j - 1)) * eta(j - 1);
    }
    return R;
}

// Largest ||[R, R^dag] psi|| over random H states (P psi = psi, then projected back onto H).
double commutator_on_H(const RegisterLayout &layout, int samples) {
    Rng rng(21);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        SparseState out = apply_R(apply_R_dagger(psi)) - apply_R_dagger(apply_R(psi));
        out.erase_if([&](const auto &entry) {
            auto sys = entry.first.modes & layout.system_mask();
            return (entry.first.modes & layout.reference_mask()) != reference_basis_bits(layout, popcount(sys));
        });
        worst = std::max(worst, out.norm());
    }
    return worst;
}

}  // namespace

TEST(reference, basis_bits) {
    auto layout = RegisterLayout::make(3, 4, 3, 0);
    EXPECT_EQ(reference_basis_bits(layout, 0), 0b0111000U);
    EXPECT_EQ(reference_basis_bits(layout, 1), 0b0011000U);
    EXPECT_EQ(reference_basis_bits(layout, 3), 0U);
    EXPECT_THROW(reference_basis_bits(layout, 4), std::out_of_range);
}

TEST(reference, R_pops_top_of_stack) {
    auto layout = small_layout();
    SparseState r = apply_R(omega(layout));
    ASSERT_EQ(r.size(), 1U);
    EXPECT_EQ(r.begin()->first.modes, reference_basis_bits(layout, 1));
    EXPECT_NEAR(r.norm(), 1.0, 1e-15);

    SparseState vac = SparseState::basis(layout, BackendKind::Physical, {0, 0});
    EXPECT_TRUE(apply_R(vac).empty());
}

TEST(reference, c_on_omega) {
    auto layout = small_layout();
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(apply_c(omega(layout), i).empty());
        SparseState up = apply_c_dagger(omega(layout), i);
        EXPECT_NEAR(up.norm(), 1.0, 1e-15);
        EXPECT_TRUE(is_in_H(up));
    }
}

TEST(reference, D_decomposition_matches_exact) {
    auto layout = RegisterLayout::make(3, 4, 3, 0);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        double theta = 2 * kPi * uniform01(rng);
        for (std::size_t i = 0; i < 3; ++i) {
            SparseState exact = apply_D_exact(psi, i, theta);
            SparseState decomposed = psi;
            apply_D_decomposed(decomposed, i, theta);
            EXPECT_LT(distance(exact, decomposed), 1e-10) << "mode " << i << " theta " << theta;
        }
    }
}

TEST(reference, D_decomposition_gate_count) {
    auto layout = RegisterLayout::make(3, 5, 3, 0);
    EXPECT_EQ(D_decomposition(layout, 0, 0.3).size(), 30U);
}

TEST(reference, compressed_c_matches_physical) {
    auto layout = small_layout();
    Rng rng(9);
    SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
    SparseState comp(layout, BackendKind::Compressed);
    for (const auto &[label, amp] : psi) {
        comp.set({label.modes & layout.system_mask(), label.qubits}, amp);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (bool dag : {false, true}) {
            SparseState p = dag ? apply_c_dagger(psi, i) : apply_c(psi, i);
            SparseState c = dag ? apply_c_dagger(comp, i) : apply_c(comp, i);
            ASSERT_EQ(p.size(), c.size());
            for (const auto &[label, amp] : p) {
                EXPECT_LT(std::abs(amp - c.amplitude({label.modes & layout.system_mask(), 0})), 1e-14);
            }
        }
    }
}

TEST(reference, R_matches_dense_definition) {
    auto layout = RegisterLayout::make(3, 4, 3, 0);
    oracle::Matrix R = dense_R(layout);
    Rng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        SparseState psi = random_fock_state(layout, rng);
        oracle::Vector v = oracle::to_dense(psi);
        EXPECT_LT((oracle::to_dense(apply_R(psi)) - R * v).norm(), 1e-13);
        EXPECT_LT((oracle::to_dense(apply_R_dagger(psi)) - R.adjoint() * v).norm(), 1e-13);
    }
}

TEST(reference, c_is_R_dagger_s) {
    auto layout = RegisterLayout::make(3, 4, 3, 0);
    oracle::Matrix R = dense_R(layout);
    Rng rng(18);
    SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
    oracle::Vector v = oracle::to_dense(psi);
    for (std::size_t i = 0; i < 3; ++i) {
        oracle::Matrix s = oracle::annihilator(layout.num_modes(), i);
        EXPECT_LT((oracle::to_dense(apply_c(psi, i)) - R.adjoint() * s * v).norm(), 1e-13);
        EXPECT_LT((oracle::to_dense(apply_c_dagger(psi, i)) - s.adjoint() * R * v).norm(), 1e-13);
    }
}

TEST(reference, R_anticommutes_with_system_modes) {
    auto layout = RegisterLayout::make(3, 3, 3, 0);
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        SparseState psi = random_fock_state(layout, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            SparseState anti = apply_R(apply_annihilate(psi, i)) + apply_annihilate(apply_R(psi), i);
            EXPECT_LT(anti.norm(), 1e-13);
        }
    }
}

TEST(reference, R_dagger_R_is_identity_on_H) {
    auto layout = RegisterLayout::make(3, 4, 3, 0);
    Rng rng(20);
    SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
    // Only the n = 3 sector (empty reference) is annihilated by R.
    SparseState back = apply_R_dagger(apply_R(psi));
    for (const auto &[label, amp] : psi) {
        if (popcount(label.modes & layout.system_mask()) < 3) {
            EXPECT_LT(std::abs(back.amplitude(label) - amp), 1e-14);
        }
    }
}

// The commutator vanishes on H only with a spare reference mode and a spare atom.
TEST(reference, commutator_needs_room_on_both_sides) {
    EXPECT_LT(commutator_on_H(RegisterLayout::make(3, 5, 4, 0), 20), 1e-12);
    EXPECT_GT(commutator_on_H(RegisterLayout::make(3, 3, 3, 0), 20), 1e-3);  // full reference at n = 0
    EXPECT_GT(commutator_on_H(RegisterLayout::make(3, 4, 3, 0), 20), 1e-3);  // empty reference at n = 3
}

TEST(reference, anticommutator_on_H) {
    auto layout = RegisterLayout::make(3, 3, 3, 0);
    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                SparseState anti = apply_c_dagger(apply_c(psi, j), i) + apply_c(apply_c_dagger(psi, i), j);
                if (i == j) {
                    anti -= psi;
                }
                EXPECT_LT(anti.norm(), 1e-13) << i << j;
            }
        }
    }
}

TEST(reference, is_in_H_examples) {
    auto layout = small_layout();
    EXPECT_TRUE(is_in_H(omega(layout)));
    EXPECT_TRUE(is_in_H(apply_c_dagger(apply_c_dagger(omega(layout), 1), 0)));
    SparseState bad = SparseState::basis(layout, BackendKind::Physical, {reference_basis_bits(layout, 0) | 1U, 0});
    EXPECT_FALSE(is_in_H(bad));
    EXPECT_THROW(apply_D_exact(bad, 0, 0.1), std::invalid_argument);
}

TEST(reference, D_special_angles) {
    auto layout = small_layout();
    SparseState w = omega(layout);
    for (std::size_t i = 0; i < 3; ++i) {
        SparseState half = apply_D_exact(w, i, kPi / 2);
        EXPECT_LT(distance(half, Complex(0, 1) * apply_c_dagger(w, i)), 1e-15);
    }
    Rng rng(23);
    SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
    EXPECT_LT(distance(apply_D_exact(psi, 1, kPi), -1.0 * psi), 1e-14);
    SparseState zero = psi;
    apply_D_decomposed(zero, 2, 0.0);
    EXPECT_LT(distance(zero, psi), 1e-14);
}

TEST(reference, D_prime_is_phase_conjugated_D) {
    auto layout = RegisterLayout::make(3, 4, 3, 0);
    Rng rng(24);
    for (int trial = 0; trial < 5; ++trial) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        double theta = 2 * kPi * uniform01(rng);
        for (std::size_t i = 0; i < 3; ++i) {
            // exp(i theta i(c^dag - c)) = cos - sin (c^dag - c)
            SparseState expected = std::cos(theta) * psi - std::sin(theta) * (apply_c_dagger(psi, i) - apply_c(psi, i));
            EXPECT_LT(distance(apply_D_prime(psi, i, theta), expected), 1e-13);
            SparseState gates = psi;
            apply_unitaries(gates, D_prime_decomposition(layout, i, theta));
            EXPECT_LT(distance(gates, expected), 1e-12);
        }
    }
}

TEST(reference, global_reference_phase_period) {
    auto layout = small_layout();
    Rng rng(25);
    SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
    SparseState s = psi;
    apply_global_reference_phase(s, 2 * kPi);
    EXPECT_LT(distance(s, psi), 1e-13);
    s = psi;
    apply_global_reference_phase(s, 0.0);
    EXPECT_EQ(distance(s, psi), 0.0);
}
