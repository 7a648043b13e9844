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
 * The quantized transition operator U_f = sum_{x != 0} |f(x)><x| on 2r+1
 * qubits, its gate factorization, and the derived constructions.
 *
 * U_f is a 0/1 partial isometry: the null word's column is zero and the row
 * of a_0 (center 1, sides 0) is zero. The gate circuit
 * CN(n-r,n) ... CN(n+r,n) X(n) is unitary and agrees with U_f on every
 * nonzero word, i.e. U_f = C (I - |O><O|).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "circuit.hpp"
#include "sca_core.hpp"

namespace qsca {

inline constexpr int kMaxTransitionRadius = 6;

inline void check_transition_radius(int r) {
    if (r < 1 || r > kMaxTransitionRadius) {
        throw std::invalid_argument("radius " + std::to_string(r) + " outside the supported range 1..6");
    }
}

struct TransitionOperator {
    Rule rule{1};
    /// 2^{2r+1} square 0/1 matrix; column x holds a 1 at row f(x).
    SparseMatrix matrix;
    Word null_word = 0;
    Word preimage_word = 0;

    std::size_t n_qubits() const { return rule.window_length(); }
    std::size_t dimension() const { return std::size_t{1} << n_qubits(); }
    Matrix dense() const { return Matrix(matrix); }
};

inline TransitionOperator build_uf_matrix(int r) {
    check_transition_radius(r);
    TransitionOperator t;
    t.rule = Rule(r);
    t.preimage_word = null_preimage_word(t.rule);
    const std::size_t dim = t.dimension();
    std::vector<Triplet> entries;
    entries.reserve(dim - 1);
    for (Word x = 1; x < dim; ++x) {
        entries.push_back({static_cast<std::size_t>(f_word(t.rule, x)), static_cast<std::size_t>(x), cplx(1.0, 0.0)});
    }
    t.matrix = sparse_from_triplets(dim, entries);
    return t;
}

inline StateVector apply_transition(const TransitionOperator &t, const StateVector &state) {
    if (state.n_qubits() != t.n_qubits()) {
        throw std::invalid_argument("state does not live on the window register");
    }
    Eigen::Map<const Eigen::VectorXcd> in(state.amplitudes().data(), static_cast<Eigen::Index>(state.dimension()));
    Eigen::VectorXcd out = t.matrix * in;
    return StateVector(state.n_qubits(), std::vector<cplx>(out.data(), out.data() + out.size()));
}

struct IsometryReport {
    /// ||U U^dagger - (I - |a_0><a_0|)||_max
    double range_residual = 0.0;
    /// ||U^dagger U - (I - |O><O|)||_max
    double domain_residual = 0.0;
    /// ||(U^dagger U)^2 - U^dagger U||_max: the initial space is a projection.
    double initial_projector_residual = 0.0;
    /// U|O> == 0 exactly.
    bool annihilates_null = false;

    bool holds(double tol = 0.0) const {
        return range_residual <= tol && domain_residual <= tol && initial_projector_residual <= tol && annihilates_null;
    }
};

namespace detail {

inline SparseMatrix identity_minus_dyad(std::size_t dim, std::size_t word) {
    std::vector<Triplet> entries;
    entries.reserve(dim - 1);
    for (std::size_t i = 0; i < dim; ++i) {
        if (i != word) {
            entries.push_back({i, i, cplx(1.0, 0.0)});
        }
    }
    return sparse_from_triplets(dim, entries);
}

} // namespace detail

inline IsometryReport check_partial_isometry(const TransitionOperator &t) {
    const std::size_t dim = t.dimension();
    const SparseMatrix u = t.matrix;
    const SparseMatrix ua = u.adjoint();
    const SparseMatrix uua = u * ua;
    const SparseMatrix uau = ua * u;

    IsometryReport rep;
    rep.range_residual = max_abs(SparseMatrix(uua - detail::identity_minus_dyad(dim, t.preimage_word)));
    rep.domain_residual = max_abs(SparseMatrix(uau - detail::identity_minus_dyad(dim, t.null_word)));
    const SparseMatrix uau2 = uau * uau;
    rep.initial_projector_residual = max_abs(SparseMatrix(uau2 - uau));
    const auto entries = to_triplets(u);
    rep.annihilates_null =
        std::none_of(entries.begin(), entries.end(), [&](const Triplet &e) { return e.col == t.null_word; });
    return rep;
}

// ---------------------------------------------------------------------------
// Invariant / flipped basis partition
// ---------------------------------------------------------------------------

struct BasisPartition {
    Rule rule{1};
    /// Words with f(x) = x, ascending.
    std::vector<Word> invariant_words;
    /// Words f rewrites. The first half holds the center-0 words (null word
    /// first, then ascending); the second half holds their center flips in
    /// reverse, so x and flip(x) sit at mirrored positions and the null word
    /// pairs with a_0 at the outermost corners.
    std::vector<Word> flipped_words;

    std::vector<Word> order() const {
        auto all = invariant_words;
        all.insert(all.end(), flipped_words.begin(), flipped_words.end());
        return all;
    }
};

inline Word center_flip(const Rule &rule, Word x) { return x ^ (Word{1} << rule.radius()); }

inline BasisPartition partition_basis(int r) {
    check_transition_radius(r);
    BasisPartition p;
    p.rule = Rule(r);
    const Word center = Word{1} << r;
    const Word dim = Word{1} << p.rule.window_length();
    std::vector<Word> center_zero;
    for (Word x = 0; x < dim; ++x) {
        const bool sides_odd = (std::popcount(x & ~center) & 1) != 0;
        if (sides_odd) {
            p.invariant_words.push_back(x);
        } else if ((x & center) == 0) {
            center_zero.push_back(x);
        }
    }
    p.flipped_words = center_zero;
    for (auto it = center_zero.rbegin(); it != center_zero.rend(); ++it) {
        p.flipped_words.push_back(center_flip(p.rule, *it));
    }
    return p;
}

/// The operator in the partition's basis order: B(i, j) = U(order[i], order[j]).
inline SparseMatrix represent_blocked(const TransitionOperator &t, const BasisPartition &partition) {
    if (!(partition.rule == t.rule)) {
        throw std::invalid_argument("partition and operator radii differ");
    }
    const auto order = partition.order();
    std::vector<std::size_t> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        position[order[i]] = i;
    }
    std::vector<Triplet> entries;
    for (const auto &e : to_triplets(t.matrix)) {
        entries.push_back({position[e.row], position[e.col], e.value});
    }
    return sparse_from_triplets(order.size(), entries);
}

struct BlockFormReport {
    std::size_t identity_size = 0;
    std::size_t antidiagonal_size = 0;
    bool identity_block = false;
    bool antidiagonal_block = false;
    bool off_blocks_zero = false;

    bool holds() const { return identity_block && antidiagonal_block && off_blocks_zero; }
};

/// Checks that `blocked` is diag(1_k, S) with S antidiagonal (1, ..., 1, 0).
/// Works on the nonzero entries only, so it scales to r = 6.
inline BlockFormReport check_block_form(const SparseMatrix &blocked, std::size_t identity_size) {
    const auto n = static_cast<std::size_t>(blocked.rows());
    BlockFormReport rep;
    rep.identity_size = identity_size;
    rep.antidiagonal_size = n - identity_size;
    const std::size_t m = rep.antidiagonal_size;
    std::size_t identity_hits = 0;
    std::size_t anti_hits = 0;
    rep.identity_block = true;
    rep.antidiagonal_block = m > 0;
    rep.off_blocks_zero = true;
    for (const auto &e : to_triplets(blocked)) {
        const bool row_id = e.row < identity_size;
        const bool col_id = e.col < identity_size;
        if (row_id != col_id) {
            rep.off_blocks_zero = false;
        } else if (row_id) {
            const bool ok = e.row == e.col && e.value == cplx(1.0, 0.0);
            rep.identity_block = rep.identity_block && ok;
            identity_hits += ok;
        } else {
            const std::size_t i = e.row - identity_size;
            const std::size_t j = e.col - identity_size;
            const bool ok = i + j == m - 1 && i != m - 1 && e.value == cplx(1.0, 0.0);
            rep.antidiagonal_block = rep.antidiagonal_block && ok;
            anti_hits += ok;
        }
    }
    rep.identity_block = rep.identity_block && identity_hits == identity_size;
    rep.antidiagonal_block = rep.antidiagonal_block && anti_hits + 1 == m;
    return rep;
}

// ---------------------------------------------------------------------------
// Gate factorization
// ---------------------------------------------------------------------------

/// Per-site update circuit: CN from each of the r left and r right
/// neighbours onto `site`, then X(site). Neighbours outside the register are
/// dropped (virtual cells fixed at 0).
inline Circuit build_uf_circuit(int r, std::size_t site, std::size_t n_qubits) {
    Rule rule(r);
    if (site >= n_qubits) {
        throw std::out_of_range("site outside the register");
    }
    Circuit c(n_qubits);
    const auto s = static_cast<long long>(site);
    for (long long k = r; k >= 1; --k) {
        if (s - k >= 0) {
            c.append(Cn{static_cast<std::size_t>(s - k), site});
        }
    }
    for (long long k = 1; k <= r; ++k) {
        if (s + k < static_cast<long long>(n_qubits)) {
            c.append(Cn{static_cast<std::size_t>(s + k), site});
        }
    }
    c.append(Not{site});
    return c;
}

/// The window circuit on 2r+1 qubits (center at qubit r).
inline Circuit build_window_circuit(int r) {
    Rule rule(r);
    return build_uf_circuit(r, static_cast<std::size_t>(r), rule.window_length());
}

enum class TotalStepMode { unitary_circuit, partial_isometry };

/// Sites 0..n_sites-1 updated in order by their per-site circuits.
inline Circuit total_step_circuit(int r, std::size_t n_sites) {
    Circuit total(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) {
        total.then(build_uf_circuit(r, i, n_sites));
    }
    return total;
}

/// Product of per-site factors W_i = C_i (I - N_i) + N_i, where N_i projects
/// onto basis states whose in-range window around i is all zero. Each factor
/// sends a basis state to a basis state, so the product is assembled column by
/// column.
inline SparseMatrix total_step_operator(int r, std::size_t n_sites, std::size_t dense_limit = kDenseQubitLimit) {
    Rule rule(r);
    if (n_sites == 0) {
        throw std::invalid_argument("need at least one site");
    }
    check_dense_limit(n_sites, dense_limit);
    const std::size_t dim = std::size_t{1} << n_sites;
    const auto n = static_cast<long long>(n_sites);
    std::vector<Triplet> entries;
    entries.reserve(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        Bits cells = unpack_bits(col, n_sites);
        for (long long i = 0; i < n; ++i) {
            std::uint8_t parity = 0;
            bool any = false;
            for (long long k = i - r; k <= i + r; ++k) {
                if (k >= 0 && k < n) {
                    parity ^= cells[static_cast<std::size_t>(k)];
                    any = any || cells[static_cast<std::size_t>(k)];
                }
            }
            // The CN ladder xors every neighbour into the center, then X.
            if (any) {
                cells[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(1u ^ parity);
            }
        }
        entries.push_back({static_cast<std::size_t>(pack_bits(cells)), col, cplx(1.0, 0.0)});
    }
    return sparse_from_triplets(dim, entries);
}

inline std::variant<Circuit, SparseMatrix> total_step(int r, std::size_t n_sites, TotalStepMode mode) {
    if (mode == TotalStepMode::unitary_circuit) {
        return total_step_circuit(r, n_sites);
    }
    return total_step_operator(r, n_sites);
}

// ---------------------------------------------------------------------------
// Quantum parallelism
// ---------------------------------------------------------------------------

struct ParallelismReport {
    int radius = 0;
    std::size_t n_qubits = 0;
    std::size_t input_terms = 0;
    std::size_t operator_applications = 0;
    StateVector output{1};
    /// Basis words carrying nonzero output amplitude, ascending.
    std::vector<Word> support;
    Word missing_word = 0;
    double expected_amplitude = 0.0;
    double max_amplitude_error = 0.0;
    double norm = 0.0;
    /// Support is every word except a_0.
    bool support_matches = false;
};

/// Applies U_f once to the normalized superposition of all nonzero words.
inline ParallelismReport parallelism_demo(int r) {
    const auto t = build_uf_matrix(r);
    ParallelismReport rep;
    rep.radius = r;
    rep.n_qubits = t.n_qubits();
    const auto input = uniform_superposition_nonnull(rep.n_qubits);
    rep.input_terms = input.dimension() - 1;
    rep.output = apply_transition(t, input);
    ++rep.operator_applications;
    rep.missing_word = t.preimage_word;
    rep.expected_amplitude = 1.0 / std::sqrt(static_cast<double>(rep.input_terms));
    for (std::size_t i = 0; i < rep.output.dimension(); ++i) {
        if (rep.output[i] != cplx(0.0, 0.0)) {
            rep.support.push_back(i);
            rep.max_amplitude_error =
                std::max(rep.max_amplitude_error, std::abs(rep.output[i] - cplx(rep.expected_amplitude, 0.0)));
        }
    }
    rep.norm = rep.output.norm();
    std::vector<Word> expected;
    for (Word w = 0; w < rep.output.dimension(); ++w) {
        if (w != t.preimage_word) {
            expected.push_back(w);
        }
    }
    rep.support_matches = rep.support == expected;
    return rep;
}

} // namespace qsca
