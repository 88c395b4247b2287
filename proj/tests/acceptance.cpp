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


// Acceptance run: one PASS/FAIL line per criterion, with indented detail lines.
// Usage: acceptance <path to fermiref CLI>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unistd.h>

#include "fermiref/backend.hpp"
#include "fermiref/codes.hpp"
#include "fermiref/harness.hpp"
#include "fermiref/logical.hpp"
#include "fermiref/qec.hpp"
#include "fermiref/random_states.hpp"
#include "fermiref/reference.hpp"

using namespace fermiref;
namespace fs = std::filesystem;

namespace {

constexpr double kExact = 1e-12;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, std::string line) {
        pass = pass && ok;
        details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", std::move(line)));
    }
    void note(std::string line) {
        details.push_back("     " + std::move(line));
    }
};

SparseState project_H(SparseState s) {
    const RegisterLayout layout = s.layout();
    s.erase_if([&](const auto &entry) {
        auto sys = entry.first.modes & layout.system_mask();
        return (entry.first.modes & layout.reference_mask()) != reference_basis_bits(layout, popcount(sys));
    });
    return s;
}

double commutator_RRdag(const RegisterLayout &layout, int samples, Rng &rng) {
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        SparseState out = apply_R(apply_R_dagger(psi)) - apply_R_dagger(apply_R(psi));
        worst = std::max(worst, project_H(out).norm());
    }
    return worst;
}

// ---------------------------------------------------------------------------------------

Outcome criterion_algebra() {
    Outcome out;
    auto layout = RegisterLayout::make(3, 3, 3, 0);
    Rng rng(101);
    const int samples = 100;

    double anti = 0.0;
    double number = 0.0;
    for (int s = 0; s < samples; ++s) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                SparseState a = apply_c_dagger(apply_c(psi, j), i) + apply_c(apply_c_dagger(psi, i), j);
                if (i == j) {
                    a -= psi;
                }
                anti = std::max(anti, a.norm());
                SparseState lhs = apply_c_dagger(apply_c(psi, j), i);
                SparseState rhs = apply_create(apply_annihilate(psi, j), i);
                number = std::max(number, distance(lhs, rhs));
            }
        }
    }
    double comm = commutator_RRdag(layout, samples, rng);

    double r_anti = 0.0;
    for (int s = 0; s < samples; ++s) {
        SparseState psi = random_fock_state(layout, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            SparseState a = apply_R(apply_annihilate(psi, i)) + apply_annihilate(apply_R(psi), i);
            r_anti = std::max(r_anti, a.norm());
        }
    }

    out.check(anti < kExact, fmt::format("(a) ({{c_i^dag, c_j}} - delta_ij) P       max {:.2e}", anti));
    out.check(comm < kExact, fmt::format("(b) P [R, R^dag] P                        max {:.2e}", comm));
    out.check(r_anti < kExact, fmt::format("(c) {{R, s_i}} on the full Fock space       max {:.2e}", r_anti));
    out.check(number < kExact, fmt::format("(d) c_i^dag c_j = s_i^dag s_j on H          max {:.2e}", number));
    if (comm >= kExact) {
        Rng diag(102);
        double roomy = commutator_RRdag(RegisterLayout::make(3, 5, 4, 0), samples, diag);
        out.note(fmt::format(
            "(b) with M_r = N the n = 0 reference is full and R^dag|Omega> = 0; with N = M_s the n = N "
            "reference is empty and R annihilates it. Same check on M_s = 3, N = 4, M_r = 5: {:.2e}",
            roomy));
    }
    return out;
}

Outcome criterion_eq2() {
    Outcome out;
    auto layout = RegisterLayout::make(3, 3, 3, 0);
    Rng rng(201);
    double worst = 0.0;
    std::vector<double> thetas;
    for (int t = 0; t < 20; ++t) {
        thetas.push_back(4 * kPi * uniform01(rng) - 2 * kPi);
    }
    for (int s = 0; s < 100; ++s) {
        SparseState psi = random_H_state(layout, BackendKind::Physical, rng);
        for (double theta : thetas) {
            for (std::size_t i = 0; i < 3; ++i) {
                SparseState d = psi;
                apply_D_decomposed(d, i, theta);
                worst = std::max(worst, distance(d, apply_D_exact(psi, i, theta)));
            }
        }
    }
    out.check(worst < 1e-10, fmt::format("decomposed vs exact D, 100 states x 20 angles x 3 modes   max {:.2e}", worst));
    out.note(fmt::format("{} elementary gates per D on M_r = 3", D_decomposition(layout, 0, 0.1).size()));
    return out;
}

Outcome criterion_repetition() {
    Outcome out;
    double stab = 0.0;
    for (std::size_t blocks = 1; blocks <= 3; ++blocks) {
        auto layout = RegisterLayout::make(3 * blocks, 3 * blocks, 3 * blocks, 0);
        for (std::uint64_t config = 0; config < (1U << blocks); ++config) {
            std::vector<int> occ(blocks);
            for (std::size_t b = 0; b < blocks; ++b) {
                occ[b] = (config >> b) & 1U;
            }
            SparseState w = logical_basis_state(layout, BackendKind::Compressed, occ);
            for (std::size_t b = 0; b < blocks; ++b) {
                for (auto which : {Stabilizer::S12, Stabilizer::S23}) {
                    stab = std::max(stab, std::abs(stabilizer_expectation(w, b, which) - 1.0));
                }
            }
        }
    }
    out.check(stab < kExact, fmt::format("stabilizers = +1 on every logical basis state (M_L <= 3)  max {:.2e}", stab));

    auto layout = RegisterLayout::make(9, 9, 9, 0);
    SparseState vac = prepare_logical_vacuum(layout, BackendKind::Compressed);
    double kill = 0.0;
    for (std::size_t b = 0; b < 3; ++b) {
        kill = std::max(kill, apply_logical_C(vac, b).norm());
    }
    out.check(kill < kExact, fmt::format("C_b |0>_L = 0                                              max {:.2e}", kill));

    Rng rng(301);
    double anti = 0.0;
    for (int s = 0; s < 100; ++s) {
        SparseState psi = random_code_state(layout, BackendKind::Compressed, rng);
        for (std::size_t b = 0; b < 3; ++b) {
            SparseState a = apply_logical_C_dagger(apply_logical_C(psi, b), b) +
                            apply_logical_C(apply_logical_C_dagger(psi, b), b) - psi;
            anti = std::max(anti, a.norm());
        }
    }
    out.check(anti < kExact, fmt::format("{{C^dag, C}} = 1 on 100 random code states                 max {:.2e}", anti));

    auto one_block = RegisterLayout::make(3, 3, 3, 0);
    double density = 0.0;
    for (int occ : {0, 1}) {
        SparseState w = logical_basis_state(one_block, BackendKind::Physical, {occ});
        for (std::size_t i = 0; i < 3; ++i) {
            density = std::max(density, std::abs(inner_product(w, apply_number(w, i)) - 0.5));
        }
    }
    out.check(density < kExact, fmt::format("<n_i> = 1/2 on |0>_L and |1>_L                            max {:.2e}", density));
    return out;
}

Outcome criterion_kl() {
    Outcome out;
    auto layout = RegisterLayout::make(3, 3, 3, 0);
    std::vector<SparseState> words{
        logical_basis_state(layout, BackendKind::Physical, {0}),
        logical_basis_state(layout, BackendKind::Physical, {1}),
    };
    KLReport rep = kl_check(words, repetition_phase_errors(0));
    out.check(rep.pass, fmt::format(
        "repetition code, E = {{1, p1, p2, p3}}: off-diagonal {:.2e}, codeword dependence {:.2e}",
        rep.max_offdiagonal_violation, rep.max_codeword_dependence));

    const double p = 0.01;
    KLReport st = steane_projector_check(SteaneCode{}, p);
    // Index 0 is K_0, 1..7 the losses s_i, 8..14 the (1 - n_i) terms.
    double diag = 0.0;
    double cross = 0.0;
    double proportional = 0.0;
    const double half_id = std::sqrt((1 - 7 * p) * p) / 2;  // <K_0^dag K_{i+7}> = sqrt((1-7p)p) <1 - n_i>
    for (std::size_t a = 1; a <= 14; ++a) {
        diag = std::max(diag, std::abs(st.C[a][a] - p / 2));
    }
    for (std::size_t i = 1; i <= 7; ++i) {
        cross = std::max(cross, std::abs(st.C[0][i]));
        for (std::size_t j = 1; j <= 7; ++j) {
            if (i != j) {
                cross = std::max(cross, std::abs(st.C[i][j]));
                proportional = std::max(proportional, std::abs(st.C[i + 7][j + 7] - p / 4));
            }
            cross = std::max(cross, std::abs(st.C[i][j + 7]));
        }
        proportional = std::max(proportional, std::abs(st.C[0][i + 7] - half_id));
    }
    out.check(st.pass, fmt::format("Steane loss channel: P K_a^dag K_b P = C_ab P residual {:.2e}", st.max_offdiagonal_violation));
    out.check(diag < kExact, fmt::format("Steane C_ii = p/2 (p = {}), i = 1..14                      max {:.2e}", p, diag));
    out.check(cross < kExact, fmt::format("Steane cross terms K_i/K_j, K_0/K_i, K_i/K_(j+7) vanish    max {:.2e}", cross));
    out.check(proportional < kExact, fmt::format(
        "pairs through the identity part of K_(i+7) are c P: C_(0,i+7) = {:.4f}, C_(i+7,j+7) = p/4  max dev {:.2e}",
        half_id, proportional));
    return out;
}

Outcome criterion_syndrome() {
    Outcome out;
    auto layout = RegisterLayout::make(9, 9, 9, 1);
    Rng rng(501);
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
        for (std::size_t mode = 0; mode < 9; ++mode) {
            SparseState psi = random_code_state(layout, BackendKind::Compressed, rng);
            SparseState hit = psi;
            apply_local_phase(hit, mode, kPi);
            qec_round(hit, 0, rng);
            worst = std::max(worst, 1.0 - fidelity(hit, psi));
        }
    }
    out.check(worst < kExact, fmt::format("single p_i then qec_round, 90 injections   1 - fidelity max {:.2e}", worst));

    // The decomposed D path on the physical backend, one block.
    auto small = RegisterLayout::make(3, 3, 3, 1);
    double phys = 0.0;
    for (std::size_t mode = 0; mode < 3; ++mode) {
        SparseState psi = random_code_state(small, BackendKind::Physical, rng);
        SparseState hit = psi;
        apply_local_phase(hit, mode, kPi);
        qec_round(hit, 0, rng, DPath::Decomposed);
        phys = std::max(phys, 1.0 - fidelity(hit, psi));
    }
    out.check(phys < kExact, fmt::format("same through the elementary-gate D circuit   1 - fidelity max {:.2e}", phys));

    auto table = brute_force_syndrome_table();
    bool same = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
        same = same && table[i] == kDecodeTable[i];
        out.note(fmt::format("{:<5} -> ({:+d}, {:+d})", to_string(table[i].first), table[i].second.s12, table[i].second.s23));
    }
    out.check(same, "brute-force decode table equals the stored table");
    return out;
}

Outcome criterion_gadgets() {
    Outcome out;
    auto layout = RegisterLayout::make(9, 9, 9, 2);
    Rng rng(601);
    double phase = 0.0;
    double density = 0.0;
    double hardware = 0.0;
    double conj = 0.0;
    for (int s = 0; s < 100; ++s) {
        SparseState psi = random_code_state(layout, BackendKind::Compressed, rng);
        std::size_t b = rng() % 3;
        std::size_t b2 = (b + 1 + rng() % 2) % 3;
        SparseState nb = apply_logical_C_dagger(apply_logical_C(psi, b), b);
        for (double theta : {kPi / 4, kPi / 2, kPi}) {
            SparseState g = psi;
            phase_gadget_logical(g, b, theta, 0);
            phase = std::max(phase, distance(g, psi + (std::polar(1.0, theta) - 1.0) * nb));
        }
        SparseState d = psi;
        density_gadget_logical(d, b, b2, 0, 1);
        SparseState both = apply_logical_C_dagger(apply_logical_C(nb, b2), b2);
        density = std::max(density, distance(d, psi - 2.0 * both));

        // exp(i pi/2 (C_b^dag C_b2 + h.c.)) = 1 - h^2 + i h
        SparseState hop = apply_logical_C_dagger(apply_logical_C(psi, b2), b) +
                          apply_logical_C_dagger(apply_logical_C(psi, b), b2);
        SparseState hop2 = apply_logical_C_dagger(apply_logical_C(hop, b2), b) +
                           apply_logical_C_dagger(apply_logical_C(hop, b), b2);
        SparseState hw = psi;
        tunneling_logical_hardware(hw, b, b2, 0);
        hardware = std::max(hardware, distance(hw, psi - hop2 + Complex(0, 1) * hop));

        SparseState c = psi;
        fswap_logical(c, b, b2);
        c = apply_logical_C(c, b);
        fswap_logical(c, b, b2);
        conj = std::max(conj, distance(c, apply_logical_C(psi, b2)));
    }
    out.check(phase < kExact, fmt::format("phase gadget T, S, Z vs exp(i theta N_b)      max {:.2e}", phase));
    out.check(density < kExact, fmt::format("density gadget vs exp(i pi N_b N_b')          max {:.2e}", density));
    out.check(hardware < kExact, fmt::format("hardware pi/2 tunneling vs exact              max {:.2e}", hardware));
    out.check(conj < kExact, fmt::format("fswap_L C_b fswap_L = C_b'                    max {:.2e}", conj));
    return out;
}

Outcome criterion_noiseless_exchange() {
    Outcome out;
    ExperimentConfig config;
    config.p_values = {0.0};
    config.shots = 1000;
    config.seed = 7;
    config.threads = 1;
    const auto start = std::chrono::steady_clock::now();
    auto summary = run_experiment(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto &pt = summary.points.at(0);
    out.check(pt.estimate == -1.0, fmt::format("p = 0, 1000 shots: estimate {} CI [{}, {:.6f}]", pt.estimate, pt.ci_lo, pt.ci_hi));
    out.check(seconds < 10.0, fmt::format("runtime {:.2f} s (budget 10 s, one thread)", seconds));
    return out;
}

Outcome criterion_suppression() {
    Outcome out;
    const std::vector<double> ps{0.002, 0.005, 0.01};
    ExperimentConfig config;
    config.p_values = ps;
    config.shots = 10000;
    config.num_error_layers = 3;
    config.seed = 42;
    config.threads = 1;

    const auto start = std::chrono::steady_clock::now();
    config.correction_enabled = false;
    auto raw = run_experiment(config);
    config.correction_enabled = true;
    auto corrected = run_experiment(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // Intervals of eps/p^k; the ratio is flat if they share a common point.
    auto flat = [&](const ExperimentSummary &s, int power, const char *label) {
        double lo = 0.0;
        double hi = 1e300;
        for (const auto &pt : s.points) {
            const double scale = std::pow(pt.p, power);
            lo = std::max(lo, pt.error_lo() / scale);
            hi = std::min(hi, pt.error_hi() / scale);
            out.note(fmt::format(
                "{} p = {:<6} eps = {:.5f}  eps/p^{} = {:7.2f}  99% CI [{:.2f}, {:.2f}]",
                label, pt.p, pt.error(), power, pt.error() / scale, pt.error_lo() / scale, pt.error_hi() / scale));
        }
        return std::pair{lo, hi};
    };
    auto [ulo, uhi] = flat(raw, 1, "uncorrected");
    auto [clo, chi] = flat(corrected, 2, "corrected  ");
    out.check(ulo <= uhi, fmt::format("uncorrected eps/p intervals overlap: common range [{:.2f}, {:.2f}]", ulo, uhi));
    out.check(clo <= chi, fmt::format("corrected eps/p^2 intervals overlap: common range [{:.2f}, {:.2f}]", clo, chi));
    const double ec = corrected.points.back().error();
    const double eu = raw.points.back().error();
    out.check(ec < eu / 3, fmt::format("corrected eps(0.01) = {:.5f} < uncorrected eps(0.01) / 3 = {:.5f}", ec, eu / 3));
    out.check(seconds < 600, fmt::format("runtime {:.1f} s (budget 600 s, one thread)", seconds));
    return out;
}

Outcome criterion_dual() {
    Outcome out;
    auto layout = RegisterLayout::make(6, 7, 6, 3);
    Rng rng(901);
    double worst = 0.0;
    bool outcomes = true;
    bool all_run = true;
    for (int c = 0; c < 20; ++c) {
        auto circuit = random_dual_circuit(layout, 50, rng, 0);
        SparseState psi = random_code_state(layout, BackendKind::Physical, rng);
        DualReport rep = run_dual(circuit, psi, rng());
        worst = std::max(worst, rep.max_deviation);
        outcomes = outcomes && rep.outcomes_match;
        all_run = all_run && !rep.failed_op && rep.ops_run == circuit.size();
    }
    out.check(worst < 1e-10 && all_run, fmt::format("20 random 50-op circuits with D gates and a qec_round: max deviation {:.2e}", worst));
    out.check(outcomes, "measurement outcomes agree between the backends");
    return out;
}

Outcome criterion_reference_recovery() {
    Outcome out;
    auto layout = RegisterLayout::make(6, 6, 6, 0);
    Rng rng(1001);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        Complex alpha = random_gaussian(rng);
        Complex beta = random_gaussian(rng);
        SparseState psi = alpha * logical_basis_state(layout, BackendKind::Physical, {1, 0}) +
                          beta * logical_basis_state(layout, BackendKind::Physical, {0, 1});
        psi.normalize();
        SparseState hit = psi;
        apply_local_phase(hit, layout.reference_mode(rng() % layout.num_reference_modes), kPi);
        measure_reference_and_recover(hit, rng);
        worst = std::max(worst, 1.0 - fidelity(hit, psi));
    }
    out.check(worst < kExact, fmt::format("alpha|1,0>_L + beta|0,1>_L, random E_Rj, 100 trials: 1 - fidelity max {:.2e}", worst));
    return out;
}

// ---------------------------------------------------------------------------------------

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string &command) {
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_determinism(const std::string &cli) {
    Outcome out;
    if (cli.empty() || !fs::exists(cli)) {
        out.check(false, "CLI path not given or missing");
        return out;
    }
    const fs::path dir = fs::temp_directory_path() / fmt::format("fermiref_acceptance_{}", ::getpid());
    fs::create_directories(dir);

    struct Case {
        std::string name;
        std::string args;        // outputs are written under {out}
        std::vector<std::string> files;
        int expected_exit;
    };
    const std::vector<Case> cases{
        {"exchange", "exchange --p 0,0.004,0.01 --shots 400 --seed 11 --out {out}/run.csv --json {out}/run.json",
         {"run.csv", "run.json", "stdout"}, 0},
        {"exchange-raw", "exchange --p 0.01 --shots 400 --no-correct --reference-errors --seed 12 --out {out}/run.csv",
         {"run.csv", "stdout"}, 0},
        {"verify", "verify --suite all --seed 3 --json {out}/verify.json", {"verify.json", "stdout"}, 0},
        {"syndrome-table", "syndrome-table --json {out}/table.json", {"table.json", "stdout"}, 0},
    };
    for (const auto &c : cases) {
        std::vector<std::string> digests;
        bool ok = true;
        int idx = 0;
        for (const char *threads : {"1", "1", "4"}) {
            const fs::path run_dir = dir / fmt::format("{}_{}", c.name, idx++);
            fs::create_directories(run_dir);
            std::string args = c.args;
            for (auto pos = args.find("{out}"); pos != std::string::npos; pos = args.find("{out}")) {
                args.replace(pos, 5, run_dir.string());
            }
            if (c.name.rfind("exchange", 0) == 0) {
                args += fmt::format(" --threads {}", threads);
            }
            int code = run(fmt::format("\"{}\" {} > \"{}\" 2>&1", cli, args, (run_dir / "stdout").string()));
            ok = ok && code == c.expected_exit;
            std::string blob;
            for (const auto &f : c.files) {
                blob += slurp(run_dir / f);
                blob += '\0';
            }
            digests.push_back(blob);
        }
        bool same = ok && digests[0] == digests[1] && digests[0] == digests[2];
        out.check(same, fmt::format("{:<15} rerun x2 and --threads 4: byte-identical outputs", c.name));
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        int id;
        const char *title;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "algebra suite on M_s = 3, N = M_r = 3", criterion_algebra},
        {2, "D decomposition equals the closed form", criterion_eq2},
        {3, "repetition-code suite", criterion_repetition},
        {4, "Knill-Laflamme matrices", criterion_kl},
        {5, "syndrome extraction and correction", criterion_syndrome},
        {6, "logical gadget oracles", criterion_gadgets},
        {7, "noiseless exchange experiment", criterion_noiseless_exchange},
        {8, "quadratic suppression of the logical error", criterion_suppression},
        {9, "backend cross-check", criterion_dual},
        {10, "reference-error recovery", criterion_reference_recovery},
        {11, "CLI determinism", [&] { return criterion_determinism(cli); }},
    };

    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception &e) {
            o.check(false, fmt::format("exception: {}", e.what()));
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.pass ? 0 : 1;
        fmt::print("{} criterion {:>2}: {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, seconds);
        for (const auto &line : o.details) {
            fmt::print("    {}\n", line);
        }
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
