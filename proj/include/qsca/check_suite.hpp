// Copyright 2026 The QSCA Authors
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

/**
 * @file
 * The invariant suite behind `qsca check`. Every randomized check draws from
 * one generator seeded by the caller, and no line depends on timing, so a
 * fixed seed gives byte-identical output.
 */

#pragma once

#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frt_quantum.hpp"
#include "quantize.hpp"
#include "random.hpp"
#include "sca_core.hpp"
#include "spin_chain.hpp"
#include "unitary_compile.hpp"

namespace qsca {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline CheckResult check_f_bijection() {
    std::string detail;
    bool ok = true;
    for (int r = 1; r <= 4; ++r) {
        const Rule rule(r);
        const Word dim = Word{1} << rule.window_length();
        std::set<Word> image;
        for (Word x = 1; x < dim; ++x) {
            image.insert(f_word(rule, x));
        }
        const bool injective = image.size() == dim - 1;
        const bool misses_a0 = !image.count(null_preimage_word(rule));
        ok = ok && injective && misses_a0;
        detail += " r" + std::to_string(r) + (injective && misses_a0 ? ":ok" : ":bad");
    }
    return {"f_window bijection onto words except a_0", ok, detail.substr(1)};
}

inline CheckResult check_step_translation(Rng &rng) {
    std::size_t cases = 0;
    bool ok = true;
    for (int r = 1; r <= 3; ++r) {
        const Rule rule(r);
        for (int trial = 0; trial < 40; ++trial) {
            Bits cells(12);
            for (auto &c : cells) {
                c = random_bit(rng);
            }
            const auto c = Configuration::from_bits(0, cells);
            const Site k = static_cast<Site>(rng() % 41) - 20;
            try {
                ok = ok && step(rule, c.shifted(k)) == step(rule, c).shifted(k);
                ++cases;
            } catch (const StepDivergedError &) {
            }
        }
    }
    return {"step commutes with translation", ok, std::to_string(cases) + " cases"};
}

inline CheckResult check_classical_frt(Rng &rng) {
    const Rule rule(2);
    std::size_t held = 0;
    std::size_t excluded = 0;
    std::size_t failed = 0;
    for (int trial = 0; trial < 400 && held < 60; ++trial) {
        const auto p = random_particle(rule, 1 + rng() % 3, rng);
        const auto pred = frt_predict(rule, p);
        const auto rep = frt_check(rule, p, pred.period);
        if (!rep.condition_held) {
            ++excluded;
            continue;
        }
        ++held;
        failed += rep.all_matched() ? 0 : 1;
    }
    return {"classical FRT predictions (r=2, L<=3)", failed == 0 && held >= 50,
            std::to_string(held) + " held, " + std::to_string(failed) + " mismatched, " + std::to_string(excluded) +
                " excluded"};
}

inline CheckResult check_basis_orthonormal() {
    bool ok = true;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (Word x = 0; x < (Word{1} << n); ++x) {
            const auto bx = basis_state(unpack_bits(x, n));
            for (Word y = 0; y < (Word{1} << n); ++y) {
                const auto by = basis_state(unpack_bits(y, n));
                ok = ok && bx.inner(by) == cplx(x == y ? 1.0 : 0.0, 0.0);
            }
        }
    }
    return {"basis states orthonormal (n<=4)", ok, "exhaustive"};
}

inline CheckResult check_gate_linearity(Rng &rng) {
    double worst = 0.0;
    const std::size_t n = 6;
    std::vector<GateOp> ops{Not{2}, Cn{0, 5}, Cn{4, 1}, CollectiveCn{0, 3, 3}, BlockReset{1, 2, ResetVariant::extended},
                            BlockReset{3, 3, ResetVariant::paper_literal}};
    for (const auto &op : ops) {
        const Circuit c(n, {op});
        for (int trial = 0; trial < 5; ++trial) {
            const auto u = random_state(n, rng);
            const auto v = random_state(n, rng);
            const cplx a(uniform_real(rng), uniform_real(rng));
            const cplx b(uniform_real(rng), uniform_real(rng));
            const auto lhs = apply_circuit(a * u + b * v, c);
            const auto rhs = a * apply_circuit(u, c) + b * apply_circuit(v, c);
            worst = std::max(worst, lhs.max_abs_diff(rhs));
        }
    }
    return {"gate application is linear", worst <= 1e-12, "max deviation " + sci(worst)};
}

inline CheckResult check_gate_unitarity() {
    double worst = 0.0;
    const std::vector<GateOp> ops{Not{1}, Cn{0, 3}, Cn{3, 2}, CollectiveCn{0, 2, 2}};
    for (const auto &op : ops) {
        worst = std::max(worst, unitarity_residual(circuit_matrix(Circuit(4, {op}))));
    }
    return {"NOT/CN/collective CN matrices unitary", worst <= 1e-12, "max residual " + sci(worst)};
}

inline CheckResult check_reset_algebra() {
    const Matrix lit = circuit_matrix(Circuit(3, {BlockReset{0, 2, ResetVariant::paper_literal}}));
    const Matrix ext = circuit_matrix(Circuit(3, {BlockReset{0, 2, ResetVariant::extended}}));
    const bool nil = max_abs(lit * lit) == 0.0;
    const bool idem = max_abs(ext * ext - ext) == 0.0;
    return {"block reset: literal nilpotent, extended idempotent", nil && idem,
            std::string("P^2=0 ") + (nil ? "yes" : "no") + ", P^2=P " + (idem ? "yes" : "no")};
}

inline CheckResult check_partial_isometry_radii() {
    bool ok = true;
    std::string detail;
    for (int r = 1; r <= 3; ++r) {
        const auto rep = check_partial_isometry(build_uf_matrix(r));
        ok = ok && rep.holds();
        detail += " r" + std::to_string(r) + ":" + format_real(rep.range_residual) + "/" +
                  format_real(rep.domain_residual);
    }
    return {"U_f partial-isometry identities", ok, "residuals" + detail};
}

inline CheckResult check_block_forms() {
    bool ok = true;
    std::string detail;
    for (int r = 1; r <= 3; ++r) {
        const auto part = partition_basis(r);
        const auto rep = check_block_form(represent_blocked(build_uf_matrix(r), part), part.invariant_words.size());
        ok = ok && rep.holds();
        detail += " r" + std::to_string(r) + ":" + std::to_string(rep.identity_size) + "+" +
                  std::to_string(rep.antidiagonal_size);
    }
    return {"blocked form diag(1, antidiag(1..1,0))", ok, detail.substr(1)};
}

inline CheckResult check_factorization() {
    bool ok = true;
    for (int r = 1; r <= 3; ++r) {
        const auto t = build_uf_matrix(r);
        Matrix c = circuit_matrix(build_window_circuit(r));
        c.col(0).setZero();
        ok = ok && max_abs(c - t.dense()) == 0.0;
    }
    return {"circuit * (I - |O><O|) == U_f (r=1..3)", ok, "entry-exact"};
}

inline CheckResult check_equivariance() {
    bool ok = true;
    for (int r = 1; r <= 3; ++r) {
        const auto t = build_uf_matrix(r);
        for (Word x = 1; x < t.dimension(); ++x) {
            const auto in = basis_state(unpack_bits(x, t.n_qubits()));
            const auto out = basis_state(unpack_bits(f_word(t.rule, x), t.n_qubits()));
            ok = ok && apply_transition(t, in) == out;
        }
    }
    return {"U_f |x> == |f(x)> for nonzero x (r<=3)", ok, "exhaustive"};
}

inline CheckResult check_parallelism() {
    const auto rep = parallelism_demo(2);
    const bool ok = rep.support_matches && rep.support.size() == 31 && rep.max_amplitude_error <= 1e-12 &&
                    std::abs(rep.norm - 1.0) <= 1e-12 && rep.operator_applications == 1;
    return {"parallelism: one application of U_f at r=2", ok,
            std::to_string(rep.support.size()) + " image words, amplitude error " + sci(rep.max_amplitude_error)};
}

inline CheckResult check_generators() {
    const double pi = std::acos(-1.0);
    const double dn = max_abs(matrix_exp_hermitian(generator_not(GeneratorVariant::verified), pi) - not_matrix());
    const double dcn =
        max_abs(matrix_exp_hermitian(generator_cn(GeneratorVariant::verified), pi) - cn_matrix());
    const Matrix lit = matrix_exp_hermitian(generator_cn(GeneratorVariant::paper_literal), pi);
    const double lit_id = max_abs(lit - Matrix::Identity(4, 4));
    const double lit_cn = max_abs(lit - cn_matrix());
    const bool ok = dn <= 1e-10 && dcn <= 1e-10 && lit_id <= 1e-10;
    return {"gate generators", ok,
            "verified NOT " + sci(dn) + ", verified CN " + sci(dcn) + ", literal CN vs I " + sci(lit_id) +
                ", literal CN vs CN " + sci(lit_cn)};
}

inline CheckResult check_chain_hamiltonian() {
    bool ok = true;
    double worst = 0.0;
    for (int r = 1; r <= 3; ++r) {
        for (std::size_t n = 1; n <= 8; ++n) {
            for (auto v : {GeneratorVariant::paper_literal, GeneratorVariant::verified}) {
                const auto h = build_chain_hamiltonian(n, r, v);
                for (const auto &t : h.terms) {
                    const auto s = t.sites();
                    ok = ok && s.size() <= 2 && (s.size() < 2 || s[1] - s[0] <= static_cast<std::size_t>(r));
                }
                worst = std::max(worst, hermiticity_residual(to_dense(h)));
            }
        }
    }
    ok = ok && worst == 0.0;
    return {"chain Hamiltonian Hermitian and r-local (n<=8)", ok, "hermiticity residual " + sci(worst)};
}

inline CheckResult check_total_evolution() {
    const auto v = compare_total_evolution(6, 1, GeneratorVariant::verified);
    const auto l = compare_total_evolution(6, 1, GeneratorVariant::paper_literal);
    return {"site unitaries reproduce the total step circuit (verified)", v.product_vs_circuit <= 1e-10,
            "verified: product-circuit " + sci(v.product_vs_circuit) + ", exp(sum)-product " +
                sci(v.sum_vs_product) + "; literal: exp(sum)-product " + sci(l.sum_vs_product)};
}

inline CheckResult check_quantum_frt(Rng &rng) {
    std::size_t cases = 0;
    std::size_t failed = 0;
    for (Word a1 = 1; a1 < 4; ++a1) {
        for (Word a2 = 1; a2 < 4; ++a2) {
            const auto rep = run_frt({unpack_bits(a1, 2), unpack_bits(a2, 2)}, 3);
            ++cases;
            failed += rep.all_stages_match() && rep.final_is_translation ? 0 : 1;
        }
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_particle(Rule(2), 3, rng);
        const auto rep = run_frt(p.blocks, 4);
        ++cases;
        failed += rep.all_stages_match() && rep.final_is_translation ? 0 : 1;
    }
    return {"quantum FRT block circuit", failed == 0,
            std::to_string(cases) + " runs, " + std::to_string(failed) + " failed"};
}

inline CheckResult check_stage_identities() {
    bool ok = true;
    std::size_t cases = 0;
    for (int r = 1; r <= 2; ++r) {
        for (std::size_t L = 1; L <= 3; ++L) {
            const auto rep = stage_identity_check(L, r);
            ok = ok && rep.holds();
            cases += rep.cases;
        }
    }
    return {"FRT stage identities (r<=2, L<=3)", ok, std::to_string(cases) + " particles"};
}

inline CheckResult check_reck(Rng &rng) {
    double worst = 0.0;
    for (std::size_t n : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 5; ++trial) {
            const Matrix u = random_unitary(n, rng);
            worst = std::max(worst, max_abs(reck_reconstruct(reck_decompose(u)) - u));
        }
    }
    for (int r = 1; r <= 2; ++r) {
        const Matrix u = circuit_matrix(build_window_circuit(r));
        worst = std::max(worst, max_abs(reck_reconstruct(reck_decompose(u)) - u));
    }
    return {"Reck round trip", worst <= 1e-9, "max error " + sci(worst)};
}

} // namespace detail

inline std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckResult> out;
    out.push_back(detail::check_f_bijection());
    out.push_back(detail::check_step_translation(rng));
    out.push_back(detail::check_classical_frt(rng));
    out.push_back(detail::check_basis_orthonormal());
    out.push_back(detail::check_gate_linearity(rng));
    out.push_back(detail::check_gate_unitarity());
    out.push_back(detail::check_reset_algebra());
    out.push_back(detail::check_partial_isometry_radii());
    out.push_back(detail::check_block_forms());
    out.push_back(detail::check_factorization());
    out.push_back(detail::check_equivariance());
    out.push_back(detail::check_parallelism());
    out.push_back(detail::check_generators());
    out.push_back(detail::check_chain_hamiltonian());
    out.push_back(detail::check_total_evolution());
    out.push_back(detail::check_quantum_frt(rng));
    out.push_back(detail::check_stage_identities());
    out.push_back(detail::check_reck(rng));
    return out;
}

inline std::string format_check_results(const std::vector<CheckResult> &results) {
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto &r : results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << r.detail << "]\n";
        failed += r.passed ? 0 : 1;
    }
    os << (results.size() - failed) << "/" << results.size() << " checks passed\n";
    return os.str();
}

} // namespace qsca
