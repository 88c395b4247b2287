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

#include "fermiref/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "fermiref/backend.hpp"
#include "fermiref/codes.hpp"
#include "fermiref/fock.hpp"
#include "fermiref/logical.hpp"
#include "fermiref/qec.hpp"
#include "fermiref/random_states.hpp"
#include "fermiref/reference.hpp"

namespace fermiref {

namespace {

constexpr double kExact = 1e-12;

CheckResult bounded(std::string name, double value, double tolerance, std::string detail = {}) {
    return {std::move(name), value < tolerance, value, tolerance, std::move(detail)};
}

CheckResult holds(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok, ok ? 0.0 : 1.0, 0.5, std::move(detail)};
}

// M_r > N > M_s. A full reference (n = 0, M_r = N) or an empty one (n = M_s = N) breaks
// [R, R^dag] P = 0 at the boundary of H.
RegisterLayout algebra_layout() {
    return RegisterLayout::make(3, 5, 4, 0);
}

double phase_free_distance(const SparseState &a, const SparseState &b) {
    Complex overlap = inner_product(a, b);
    if (std::abs(overlap) == 0.0) {
        return distance(a, b);
    }
    return distance(a, (std::conj(overlap) / std::abs(overlap)) * b);
}

// ---------------------------------------------------------------------------------------

SuiteReport fock_suite(const VerifyOptions &opt) {
    SuiteReport report{"fock", {}};
    auto layout = RegisterLayout::make(6, 4, 4, 2);
    Rng rng(opt.seed);
    double norm_drift = 0.0;
    double number_drift = 0.0;
    double inverse = 0.0;
    double fswap_relation = 0.0;
    double fswap_square = 0.0;
    double linearity = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState psi = random_fock_state(layout, rng, 4);
        std::size_t i = rng() % layout.num_modes();
        std::size_t j = (i + 1 + rng() % (layout.num_modes() - 1)) % layout.num_modes();
        double theta = 2 * kPi * uniform01(rng);

        SparseState t = psi;
        apply_tunneling(t, i, j, theta);
        apply_density_phase(t, i, j, theta);
        apply_local_phase(t, i, theta);
        norm_drift = std::max(norm_drift, std::abs(t.norm() - 1.0));
        for (const auto &[label, amp] : t) {
            number_drift = std::max(number_drift, std::abs(popcount(label.modes) - 4.0));
        }

        SparseState back = psi;
        apply_tunneling(back, i, j, theta);
        apply_tunneling(back, i, j, -theta);
        inverse = std::max(inverse, distance(back, psi));

        SparseState lhs = psi;
        apply_tunneling(lhs, i, j, kPi / 2);
        SparseState rhs = psi;
        apply_local_phase(rhs, j, kPi / 2);
        apply_local_phase(rhs, i, kPi / 2);
        apply_fswap(rhs, i, j);
        fswap_relation = std::max(fswap_relation, distance(lhs, rhs));

        SparseState twice = psi;
        apply_fswap(twice, i, j);
        apply_fswap(twice, i, j);
        fswap_square = std::max(fswap_square, distance(twice, psi));

        SparseState phi = random_fock_state(layout, rng, 4);
        Complex alpha = random_gaussian(rng);
        Complex beta = random_gaussian(rng);
        SparseState sum = alpha * psi + beta * phi;
        apply_tunneling(sum, i, j, theta);
        SparseState a = psi;
        SparseState b = phi;
        apply_tunneling(a, i, j, theta);
        apply_tunneling(b, i, j, theta);
        linearity = std::max(linearity, distance(sum, alpha * a + beta * b));
    }
    report.checks.push_back(bounded("unitary gates preserve the norm", norm_drift, kExact));
    report.checks.push_back(bounded("unitary gates preserve the atom number", number_drift, 0.5));
    report.checks.push_back(bounded("tunneling(theta) tunneling(-theta) = 1", inverse, kExact));
    report.checks.push_back(bounded("pi/2 tunneling = fswap e^{i pi/2 n_i} e^{i pi/2 n_j}", fswap_relation, kExact));
    report.checks.push_back(bounded("fswap^2 = 1", fswap_square, kExact));
    report.checks.push_back(bounded("gate application is linear", linearity, 1e-10));
    return report;
}

// ---------------------------------------------------------------------------------------

SuiteReport reference_suite(const VerifyOptions &opt) {
    SuiteReport report{"reference", {}};
    auto layout = algebra_layout();
    Rng rng(opt.seed);
    double anticomm = 0.0;
    double ladder_comm = 0.0;
    double r_s_anticomm = 0.0;
    double hopping = 0.0;
    double eq2 = 0.0;
    double dprime_square = 0.0;
    double global_phase = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                SparseState a = apply_c_dagger(apply_c(psi, j), i) + apply_c(apply_c_dagger(psi, i), j);
                if (i == j) {
                    a -= psi;
                }
                anticomm = std::max(anticomm, a.norm());
                SparseState cc = apply_c_dagger(apply_c(psi, j), i);
                SparseState ss = apply_create(apply_annihilate(psi, j), i);
                hopping = std::max(hopping, distance(cc, ss));
            }
            double theta = 2 * kPi * uniform01(rng);
            SparseState decomposed = psi;
            apply_D_decomposed(decomposed, i, theta);
            eq2 = std::max(eq2, distance(decomposed, apply_D_exact(psi, i, theta)));
            dprime_square = std::max(dprime_square, distance(apply_D_prime(psi, i, kPi), -1.0 * psi));
        }
        SparseState commutator = apply_R(apply_R_dagger(psi)) - apply_R_dagger(apply_R(psi));
        // Project back onto H: drop labels whose reference part is off-pattern.
        SparseState projected = commutator.empty_like();
        for (const auto &[label, amp] : commutator) {
            auto n = static_cast<std::size_t>(popcount(label.modes & layout.system_mask()));
            if (n <= layout.total_atoms && (label.modes & layout.reference_mask()) == reference_basis_bits(layout, n)) {
                projected.add(label, amp);
            }
        }
        ladder_comm = std::max(ladder_comm, projected.norm());

        SparseState full = random_fock_state(layout, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            SparseState a = apply_R(apply_annihilate(full, i)) + apply_annihilate(apply_R(full), i);
            r_s_anticomm = std::max(r_s_anticomm, a.norm());
        }

        SparseState fixed = random_fock_state(layout, rng, 3);
        double eps = uniform01(rng);
        SparseState lhs = fixed;
        apply_global_reference_phase(lhs, eps);
        SparseState rhs = fixed;
        for (std::size_t i = 0; i < 3; ++i) {
            apply_local_phase(rhs, i, -eps);
        }
        global_phase = std::max(global_phase, phase_free_distance(lhs, rhs));
    }
    report.checks.push_back(bounded("({c_i^dag, c_j} - delta_ij) P = 0", anticomm, kExact));
    report.checks.push_back(bounded("P [R, R^dag] P = 0", ladder_comm, kExact));
    report.checks.push_back(bounded("{R, s_i} = 0", r_s_anticomm, kExact));
    report.checks.push_back(bounded("c_i^dag c_j = s_i^dag s_j on H", hopping, kExact));
    report.checks.push_back(bounded("decomposed D = exact D on H", eq2, 1e-10));
    report.checks.push_back(bounded("D'(pi) = -1 on H", dprime_square, kExact));
    report.checks.push_back(bounded("global reference phase = system phases up to a global phase", global_phase, kExact));
    return report;
}

// ---------------------------------------------------------------------------------------

SuiteReport codes_suite(const VerifyOptions &opt) {
    SuiteReport report{"codes", {}};
    Rng rng(opt.seed);
    double stabilized = 0.0;
    for (std::size_t blocks = 1; blocks <= 3; ++blocks) {
        auto layout = RegisterLayout::make(3 * blocks, 3 * blocks, 3 * blocks, 0);
        for (std::uint64_t config = 0; config < (std::uint64_t{1} << blocks); ++config) {
            std::vector<int> occ(blocks);
            for (std::size_t b = 0; b < blocks; ++b) {
                occ[b] = static_cast<int>((config >> b) & 1U);
            }
            SparseState word = logical_basis_state(layout, BackendKind::Compressed, occ);
            for (std::size_t b = 0; b < blocks; ++b) {
                for (Stabilizer w : {Stabilizer::S12, Stabilizer::S23}) {
                    stabilized = std::max(stabilized, std::abs(stabilizer_expectation(word, b, w) - 1.0));
                }
            }
        }
    }
    report.checks.push_back(bounded("stabilizers are +1 on every logical basis state (M_L <= 3)", stabilized, kExact));

    auto single = RegisterLayout::make(3, 3, 3, 0);
    SparseState zero = prepare_logical_vacuum(single, BackendKind::Physical);
    SparseState one = logical_basis_state(single, BackendKind::Physical, {1});
    report.checks.push_back(bounded("C |0>_L = 0", apply_logical_C(zero, 0).norm(), kExact));

    double car = 0.0;
    double number = 0.0;
    auto two = RegisterLayout::make(6, 6, 6, 0);
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState psi = random_code_state(two, BackendKind::Compressed, rng);
        for (std::size_t b = 0; b < 2; ++b) {
            SparseState a = apply_logical_C_dagger(apply_logical_C(psi, b), b) + apply_logical_C(apply_logical_C_dagger(psi, b), b);
            car = std::max(car, distance(a, psi));
            double via_c = inner_product(psi, apply_logical_C_dagger(apply_logical_C(psi, b), b)).real();
            number = std::max(number, std::abs(via_c - logical_number_expectation(psi, b)));
        }
    }
    report.checks.push_back(bounded("{C^dag, C} = 1 on the code space", car, kExact));
    report.checks.push_back(bounded("N_b polynomial = <C^dag C> on the code space", number, kExact));

    double half = 0.0;
    for (const SparseState *w : {&zero, &one}) {
        for (std::size_t i = 0; i < 3; ++i) {
            half = std::max(half, std::abs(inner_product(*w, apply_number(*w, i)).real() - 0.5));
        }
    }
    report.checks.push_back(bounded("<n_i> = 1/2 on |0>_L and |1>_L", half, kExact));

    KLReport phase = kl_check({zero, one}, repetition_phase_errors(0));
    report.checks.push_back(bounded(
        "Knill-Laflamme holds for {1, p1, p2, p3}",
        std::max(phase.max_offdiagonal_violation, phase.max_codeword_dependence),
        kKLTolerance));

    auto errors = repetition_phase_errors(0);
    errors.push_back({"c1", [](const SparseState &s) { return apply_c(s, 0); }, {}});
    KLReport loss = kl_check({zero, one}, errors);
    report.checks.push_back(holds(
        "Knill-Laflamme fails once a referenced loss c_1 is added",
        !loss.pass,
        fmt::format("off-diagonal {:.3g}", loss.max_offdiagonal_violation)));
    return report;
}

// ---------------------------------------------------------------------------------------

SuiteReport steane_suite(const VerifyOptions &opt) {
    SuiteReport report{"steane", {}};
    SteaneCode code;
    const double p = opt.steane_p;
    KLReport kl = steane_projector_check(code, p);
    report.checks.push_back(bounded("P K_a^dag K_b P = C_ab P for all 15 x 15 pairs", kl.max_offdiagonal_violation, kKLTolerance));
    double diagonal = 0.0;
    double cross = 0.0;
    for (std::size_t i = 1; i <= 7; ++i) {
        diagonal = std::max(diagonal, std::abs(kl.C[i][i] - p / 2));
        cross = std::max(cross, std::abs(kl.C[0][i]));
        for (std::size_t j = 1; j <= 7; ++j) {
            if (i != j) {
                cross = std::max(cross, std::abs(kl.C[i][j]));
            }
        }
    }
    report.checks.push_back(bounded(
        "C_ii = p/2 for the loss operators K_i",
        diagonal,
        kKLTolerance,
        fmt::format("p = {}, C_11 = {:.12g}", p, kl.C[1][1].real())));
    report.checks.push_back(bounded("C_ij = 0 (i != j) and C_0i = 0", cross, kKLTolerance));

    auto layout = SteaneCode::layout();
    Rng rng(opt.seed);
    auto kraus = loss_kraus_operators(code, p);
    double completeness = 0.0;
    double idempotent = 0.0;
    double commute = 0.0;
    for (std::size_t s = 0; s < std::min<std::size_t>(opt.samples, 5); ++s) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        double total = 0.0;
        for (const auto &k : kraus) {
            total += k.apply(psi).norm_squared();
        }
        completeness = std::max(completeness, std::abs(total - 1.0));
        SparseState once = apply_steane_projector(psi, code);
        idempotent = std::max(idempotent, distance(apply_steane_projector(once, code), once));
        for (std::size_t a = 0; a < 6; ++a) {
            for (std::size_t b = a + 1; b < 6; ++b) {
                SparseState ab = apply_steane_stabilizer(apply_steane_stabilizer(psi, code, b), code, a);
                SparseState ba = apply_steane_stabilizer(apply_steane_stabilizer(psi, code, a), code, b);
                commute = std::max(commute, distance(ab, ba));
            }
        }
    }
    report.checks.push_back(bounded("sum_a K_a^dag K_a = 1", completeness, kExact));
    report.checks.push_back(bounded("P^2 = P", idempotent, kExact));
    report.checks.push_back(bounded("Steane stabilizers commute on H", commute, kExact));
    return report;
}

// ---------------------------------------------------------------------------------------

SuiteReport qec_suite(const VerifyOptions &opt) {
    SuiteReport report{"qec", {}};
    auto table = brute_force_syndrome_table();
    report.checks.push_back(holds("brute-force decode table equals the stored table", table == kDecodeTable));

    auto layout = RegisterLayout::make(6, 6, 6, 1);
    Rng rng(opt.seed);
    double single = 0.0;
    double projection = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState psi = random_code_state(layout, BackendKind::Compressed, rng);
        std::size_t mode = rng() % 6;
        SparseState hit = psi;
        apply_local_phase(hit, mode, kPi);
        qec_round(hit, 0, rng);
        single = std::max(single, phase_free_distance(hit, psi));

        SparseState h = random_H_state(layout, BackendKind::Compressed, rng);
        std::size_t b = rng() % 2;
        Stabilizer which = rng() % 2 ? Stabilizer::S12 : Stabilizer::S23;
        SparseState measured = h;
        int eigen = measure_stabilizer(measured, b, which, 0, rng).eigenvalue;
        SparseState expected = h + static_cast<double>(eigen) * apply_stabilizer(h, b, which);
        expected.prune();
        expected.normalize();
        projection = std::max(projection, distance(measured, expected));
    }
    report.checks.push_back(bounded("qec_round corrects any single phase error", single, kExact));
    report.checks.push_back(bounded("stabilizer measurement = (1 +- S)/2 projection", projection, kExact));

    auto two = RegisterLayout::make(6, 6, 6, 0);
    double recovery = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState psi = random_code_state(two, BackendKind::Physical, rng, 1);
        SparseState hit = psi;
        std::size_t j = rng() % two.num_reference_modes;
        apply_local_phase(hit, two.reference_mode(j), kPi);
        measure_reference_and_recover(hit, rng);
        recovery = std::max(recovery, 1.0 - fidelity(hit, psi));
    }
    report.checks.push_back(bounded("reference error + N_R measurement + re-encoding restores the state", recovery, kExact));
    return report;
}

// ---------------------------------------------------------------------------------------

SuiteReport logical_suite(const VerifyOptions &opt) {
    SuiteReport report{"logical", {}};
    auto layout = RegisterLayout::make(9, 9, 9, 2);
    Rng rng(opt.seed);
    double phase = 0.0;
    double density = 0.0;
    double hardware = 0.0;
    double conjugation = 0.0;
    double exact_tunnel = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState psi = random_code_state(layout, BackendKind::Compressed, rng);
        std::size_t b = rng() % 3;
        std::size_t b2 = (b + 1 + rng() % 2) % 3;
        SparseState number = apply_logical_C_dagger(apply_logical_C(psi, b), b);
        for (double theta : {kPi / 4, kPi / 2, kPi}) {
            SparseState gadget = psi;
            phase_gadget_logical(gadget, b, theta, 0);
            SparseState expected = psi + (std::polar(1.0, theta) - 1.0) * number;
            phase = std::max(phase, distance(gadget, expected));
        }
        SparseState dens = psi;
        density_gadget_logical(dens, b, b2, 0, 1);
        SparseState both = apply_logical_C_dagger(apply_logical_C(number, b2), b2);
        density = std::max(density, distance(dens, psi - 2.0 * both));

        SparseState hop = apply_logical_C_dagger(apply_logical_C(psi, b2), b) + apply_logical_C_dagger(apply_logical_C(psi, b), b2);
        SparseState hop2 = apply_logical_C_dagger(apply_logical_C(hop, b2), b) + apply_logical_C_dagger(apply_logical_C(hop, b), b2);
        double theta = 2 * kPi * uniform01(rng);
        SparseState exact = psi;
        tunneling_logical(exact, b, b2, theta);
        SparseState oracle = psi + (std::cos(theta) - 1.0) * hop2 + Complex{0.0, std::sin(theta)} * hop;
        exact_tunnel = std::max(exact_tunnel, distance(exact, oracle));

        SparseState hw = psi;
        tunneling_logical_hardware(hw, b, b2, 0);
        SparseState quarter = psi - hop2 + Complex{0.0, 1.0} * hop;
        hardware = std::max(hardware, distance(hw, quarter));

        SparseState conj = psi;
        fswap_logical(conj, b, b2);
        conj = apply_logical_C(conj, b);
        fswap_logical(conj, b, b2);
        conjugation = std::max(conjugation, distance(conj, apply_logical_C(psi, b2)));
    }
    report.checks.push_back(bounded("phase gadget (T, S, Z) = exp(i theta N_b)", phase, kExact));
    report.checks.push_back(bounded("density gadget = exp(i pi N_b N_b')", density, kExact));
    report.checks.push_back(bounded("logical tunneling = cos + i sin (C^dag C' + h.c.)", exact_tunnel, kExact));
    report.checks.push_back(bounded("hardware pi/2 tunneling = exact pi/2 tunneling", hardware, kExact));
    report.checks.push_back(bounded("fswap_L C_b fswap_L = C_b'", conjugation, kExact));
    return report;
}

// ---------------------------------------------------------------------------------------

SuiteReport backend_suite(const VerifyOptions &opt) {
    SuiteReport report{"backend", {}};
    auto layout = RegisterLayout::make(6, 7, 6, 3);
    Rng rng(opt.seed);
    double worst = 0.0;
    bool outcomes = true;
    std::string failure;
    for (std::size_t c = 0; c < opt.samples; ++c) {
        auto circuit = random_dual_circuit(layout, 50, rng, 0);
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        DualReport r = run_dual(circuit, psi, rng());
        worst = std::max(worst, r.max_deviation);
        outcomes = outcomes && r.outcomes_match;
        if (failure.empty() && r.failed_op) {
            failure = r.message;
        }
    }
    report.checks.push_back(bounded("run_dual on random 50-op circuits", worst, 1e-10, failure));
    report.checks.push_back(holds("both backends see the same measurement outcomes", outcomes));

    double roundtrip = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        SparseState comp = random_H_state(layout, BackendKind::Compressed, rng);
        roundtrip = std::max(roundtrip, max_amplitude_deviation(compress(decompress(comp, layout)), comp));
    }
    report.checks.push_back(bounded("compress(decompress(x)) = x", roundtrip, kExact));
    return report;
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"fock", "reference", "codes", "steane", "qec", "logical", "backend"};
    return names;
}

SuiteReport run_suite(const std::string &name, const VerifyOptions &options) {
    static const std::vector<std::pair<std::string, std::function<SuiteReport(const VerifyOptions &)>>> suites{
        {"fock", fock_suite},
        {"reference", reference_suite},
        {"codes", codes_suite},
        {"steane", steane_suite},
        {"qec", qec_suite},
        {"logical", logical_suite},
        {"backend", backend_suite},
    };
    for (const auto &[suite, fn] : suites) {
        if (suite == name) {
            return fn(options);
        }
    }
    throw std::invalid_argument(fmt::format("unknown suite '{}'", name));
}

}  // namespace fermiref
