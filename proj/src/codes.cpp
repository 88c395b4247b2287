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

#include "fermiref/codes.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "fermiref/qec.hpp"
#include "fermiref/reference.hpp"

namespace fermiref {

namespace {

struct Ladder {
    std::size_t mode;
    bool dagger;
};

// Applies a product of referenced ladder operators written left to right; the rightmost acts first.
SparseState apply_word(const SparseState &state, std::initializer_list<Ladder> word) {
    SparseState out = state;
    for (auto it = std::rbegin(word); it != std::rend(word); ++it) {
        out = it->dagger ? apply_c_dagger(out, it->mode) : apply_c(out, it->mode);
        if (out.empty()) {
            break;
        }
    }
    return out;
}

void require_block(const SparseState &state, std::size_t b) {
    const auto &layout = state.layout();
    if (layout.block_size != 3 || b >= layout.num_blocks()) {
        throw std::out_of_range(fmt::format("block {} out of range ({} blocks of size {})", b, layout.num_blocks(), layout.block_size));
    }
}

void accumulate(SparseState &acc, Complex factor, const SparseState &term) {
    for (const auto &[label, amp] : term) {
        acc.add(label, factor * amp);
    }
}

}  // namespace

RepetitionCode RepetitionCode::for_layout(const RegisterLayout &layout) {
    if (layout.block_size != 3) {
        throw std::invalid_argument("the repetition code needs blocks of three modes");
    }
    return RepetitionCode{layout.num_blocks()};
}

std::string to_string(Stabilizer which) {
    return which == Stabilizer::S12 ? "S12" : "S23";
}

SparseState prepare_logical_vacuum(const RegisterLayout &layout, BackendKind backend) {
    if (layout.block_size != 3 || layout.total_atoms < layout.num_system_modes) {
        throw std::invalid_argument(fmt::format(
            "logical vacuum needs blocks of 3 and N >= M_s (got N = {}, M_s = {})", layout.total_atoms, layout.num_system_modes));
    }
    std::uint64_t omega = backend == BackendKind::Physical ? reference_basis_bits(layout, 0) : 0;
    SparseState state = SparseState::basis(layout, backend, {omega, 0});
    const Complex i{0.0, 1.0};
    for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
        std::size_t m1 = 3 * b, m2 = 3 * b + 1, m3 = 3 * b + 2;
        SparseState next = state;
        accumulate(next, i, apply_word(state, {{m1, true}, {m2, true}}));
        accumulate(next, -i, apply_word(state, {{m2, true}, {m3, true}}));
        accumulate(next, 1.0, apply_word(state, {{m1, true}, {m3, true}}));
        next *= 0.5;
        next.prune();
        state = std::move(next);
    }
    state.normalize();
    Complex anchor = state.amplitude({omega, 0});
    if (std::abs(anchor) > 0.0) {
        state *= std::conj(anchor) / std::abs(anchor);
    }
    return state;
}

SparseState apply_logical_C(const SparseState &state, std::size_t b) {
    require_block(state, b);
    std::size_t m1 = 3 * b, m2 = 3 * b + 1, m3 = 3 * b + 2;
    SparseState out = apply_word(state, {{m1, false}, {m2, false}, {m3, false}});
    out += apply_word(state, {{m1, false}, {m2, true}, {m3, true}});
    out += apply_word(state, {{m1, true}, {m2, false}, {m3, true}});
    out += apply_word(state, {{m1, true}, {m2, true}, {m3, false}});
    out *= Complex{0.0, 1.0};
    out.prune();
    return out;
}

SparseState apply_logical_C_dagger(const SparseState &state, std::size_t b) {
    require_block(state, b);
    std::size_t m1 = 3 * b, m2 = 3 * b + 1, m3 = 3 * b + 2;
    SparseState out = apply_word(state, {{m3, true}, {m2, true}, {m1, true}});
    out += apply_word(state, {{m3, false}, {m2, false}, {m1, true}});
    out += apply_word(state, {{m3, false}, {m2, true}, {m1, false}});
    out += apply_word(state, {{m3, true}, {m2, false}, {m1, false}});
    out *= Complex{0.0, -1.0};
    out.prune();
    return out;
}

SparseState logical_basis_state(const RegisterLayout &layout, BackendKind backend, const std::vector<int> &occupations) {
    if (occupations.size() != layout.num_blocks()) {
        throw std::invalid_argument(
            fmt::format("{} occupations given for {} logical modes", occupations.size(), layout.num_blocks()));
    }
    SparseState state = prepare_logical_vacuum(layout, backend);
    for (std::size_t b = 0; b < occupations.size(); ++b) {
        if (occupations[b] != 0 && occupations[b] != 1) {
            throw std::invalid_argument(fmt::format("logical occupation {} is not 0 or 1", occupations[b]));
        }
        if (occupations[b] == 1) {
            state = apply_logical_C_dagger(state, b);
        }
    }
    state.normalize();
    return state;
}

SparseState apply_stabilizer(const SparseState &state, std::size_t b, Stabilizer which) {
    require_block(state, b);
    std::size_t m1 = 3 * b, m2 = 3 * b + 1, m3 = 3 * b + 2;
    SparseState out = state.empty_like();
    if (which == Stabilizer::S12) {
        // i (c1 + c1^dag)(c2 + c2^dag)
        SparseState g2 = apply_c(state, m2) + apply_c_dagger(state, m2);
        out = apply_c(g2, m1) + apply_c_dagger(g2, m1);
        out *= Complex{0.0, 1.0};
    } else {
        // -i (c2 - c2^dag)(c3 - c3^dag)
        SparseState g3 = apply_c(state, m3) - apply_c_dagger(state, m3);
        out = apply_c(g3, m2) - apply_c_dagger(g3, m2);
        out *= Complex{0.0, -1.0};
    }
    out.prune();
    return out;
}

double stabilizer_expectation(const SparseState &state, std::size_t b, Stabilizer which) {
    return inner_product(state, apply_stabilizer(state, b, which)).real();
}

int logical_number_value(std::uint64_t system_bits, std::size_t b) {
    int n1 = (system_bits >> (3 * b)) & 1U;
    int n2 = (system_bits >> (3 * b + 1)) & 1U;
    int n3 = (system_bits >> (3 * b + 2)) & 1U;
    return 4 * n1 * n2 * n3 + n1 + n2 + n3 - 2 * n1 * n3 - 2 * n2 * n3 - 2 * n1 * n2;
}

double logical_number_expectation(const SparseState &state, std::size_t b) {
    require_block(state, b);
    double total = 0.0;
    for (const auto &[label, amp] : state) {
        total += std::norm(amp) * logical_number_value(label.modes, b);
    }
    return total;
}

KLReport kl_check(const std::vector<SparseState> &codewords, const std::vector<Operator> &errors) {
    if (codewords.empty() || errors.empty()) {
        throw std::invalid_argument("kl_check needs at least one codeword and one error");
    }
    for (std::size_t i = 0; i < codewords.size(); ++i) {
        for (std::size_t j = 0; j < codewords.size(); ++j) {
            Complex overlap = inner_product(codewords[i], codewords[j]);
            if (std::abs(overlap - (i == j ? 1.0 : 0.0)) > 1e-10) {
                throw std::invalid_argument(fmt::format("codewords {} and {} are not orthonormal", i, j));
            }
        }
    }
    // images[e][i] = E_e |i_L>
    std::vector<std::vector<SparseState>> images(errors.size());
    for (std::size_t e = 0; e < errors.size(); ++e) {
        for (const auto &w : codewords) {
            images[e].push_back(errors[e].apply(w));
        }
    }
    KLReport report;
    report.C.assign(errors.size(), std::vector<Complex>(errors.size()));
    for (std::size_t n = 0; n < errors.size(); ++n) {
        for (std::size_t m = 0; m < errors.size(); ++m) {
            report.C[n][m] = inner_product(images[n][0], images[m][0]);
            for (std::size_t i = 0; i < codewords.size(); ++i) {
                for (std::size_t j = 0; j < codewords.size(); ++j) {
                    Complex value = inner_product(images[n][i], images[m][j]);
                    if (i == j) {
                        report.max_codeword_dependence =
                            std::max(report.max_codeword_dependence, std::abs(value - report.C[n][m]));
                    } else {
                        report.max_offdiagonal_violation = std::max(report.max_offdiagonal_violation, std::abs(value));
                    }
                }
            }
        }
    }
    report.pass = report.max_offdiagonal_violation < kKLTolerance && report.max_codeword_dependence < kKLTolerance;
    return report;
}

std::vector<Operator> repetition_phase_errors(std::size_t b) {
    std::vector<Operator> errors;
    auto identity = [](const SparseState &s) { return s; };
    errors.push_back({"1", identity, identity});
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t mode = 3 * b + k;
        auto parity = [mode](const SparseState &s) {
            SparseState out = s;
            apply_local_phase(out, mode, kPi);
            return out;
        };
        errors.push_back({fmt::format("p{}", k + 1), parity, parity});
    }
    return errors;
}

// ---------------------------------------------------------------------------------------
// Steane

RegisterLayout SteaneCode::layout() {
    return RegisterLayout::make(7, 8, 7, 0, 7);
}

SparseState apply_steane_stabilizer(const SparseState &state, const SteaneCode &code, std::size_t index) {
    if (index >= 6) {
        throw std::out_of_range(fmt::format("Steane stabilizer index {} out of range", index));
    }
    const auto &support = SteaneCode::kSupports[index % 3];
    SparseState out = state;
    // Rightmost factor of the written product acts first.
    for (auto it = support.rbegin(); it != support.rend(); ++it) {
        std::size_t mode = code.modes[*it - 1];
        if (index < 3) {
            // 1 - 2 c^dag c
            SparseState number = apply_c_dagger(apply_c(out, mode), mode);
            out -= 2.0 * std::move(number);
        } else {
            // i (c + c^dag)
            SparseState flipped = apply_c(out, mode) + apply_c_dagger(out, mode);
            out = Complex{0.0, 1.0} * std::move(flipped);
        }
        out.prune();
    }
    return out;
}

SparseState apply_steane_projector(const SparseState &state, const SteaneCode &code) {
    SparseState out = state;
    for (std::size_t index : {2, 1, 0, 5, 4, 3}) {
        SparseState next = out + apply_steane_stabilizer(out, code, index);
        next *= 0.5;
        next.prune();
        out = std::move(next);
    }
    return out;
}

KLReport steane_projector_check(const SteaneCode &code, const std::vector<Operator> &kraus) {
    RegisterLayout layout = SteaneCode::layout();
    std::vector<SparseState> projected;
    std::size_t anchor = 0;
    double anchor_norm = -1.0;
    for (std::uint64_t sys = 0; sys < 128; ++sys) {
        auto n = static_cast<std::size_t>(popcount(sys));
        SparseState basis = SparseState::basis(layout, BackendKind::Physical, {sys | reference_basis_bits(layout, n), 0});
        projected.push_back(apply_steane_projector(basis, code));
        double norm = projected.back().norm_squared();
        if (norm > anchor_norm + 1e-12) {
            anchor_norm = norm;
            anchor = projected.size() - 1;
        }
    }
    if (anchor_norm <= 0.0) {
        throw std::logic_error("Steane projector annihilates every basis state");
    }

    KLReport report;
    report.C.assign(kraus.size(), std::vector<Complex>(kraus.size()));
    for (std::size_t b = 0; b < kraus.size(); ++b) {
        std::vector<SparseState> hit;
        hit.reserve(projected.size());
        for (const auto &w : projected) {
            hit.push_back(kraus[b].apply(w));
        }
        for (std::size_t a = 0; a < kraus.size(); ++a) {
            if (!kraus[a].apply_adjoint) {
                throw std::invalid_argument(fmt::format("operator {} has no adjoint", kraus[a].name));
            }
            std::vector<SparseState> images;
            images.reserve(projected.size());
            for (const auto &h : hit) {
                images.push_back(apply_steane_projector(kraus[a].apply_adjoint(h), code));
            }
            Complex c = inner_product(projected[anchor], images[anchor]) / anchor_norm;
            report.C[a][b] = c;
            for (std::size_t x = 0; x < projected.size(); ++x) {
                double residual = distance(images[x], c * projected[x]);
                report.max_offdiagonal_violation = std::max(report.max_offdiagonal_violation, residual);
            }
        }
    }
    report.pass = report.max_offdiagonal_violation < kKLTolerance;
    return report;
}

KLReport steane_projector_check(const SteaneCode &code, double p) {
    return steane_projector_check(code, loss_kraus_operators(code, p));
}

}  // namespace fermiref
