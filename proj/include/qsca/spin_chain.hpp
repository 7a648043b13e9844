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
 * Hermitian generators of the NOT and CN gates and the free-boundary spin
 * chain built from them.
 *
 * Two normalizations ship side by side:
 *
 *   paper_literal  H_N  = (Z + X) / 2
 *                  H_CN = (1 - Z_c)(X_t - 1) / 2
 *   verified       H_N  = (1 - X) / 2
 *                  H_CN = (1 - Z_c)(1 - X_t) / 4
 *
 * The verified forms are projectors, so exp(i pi H) reproduces X and CN
 * exactly. The literal CN form is -2 times the same projector and
 * exponentiates to the identity.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "circuit.hpp"
#include "operator.hpp"
#include "quantize.hpp"

namespace qsca {

enum class Pauli : char { I = 'I', X = 'X', Z = 'Z' };

enum class GeneratorVariant { paper_literal, verified };

/// coefficient * prod_site factors[site]; unlisted sites are identity.
struct PauliTerm {
    double coefficient = 0.0;
    std::map<std::size_t, Pauli> factors;

    std::vector<std::size_t> sites() const {
        std::vector<std::size_t> s;
        for (const auto &[site, p] : factors) {
            s.push_back(site);
        }
        return s;
    }

    std::string op_string() const {
        std::string s;
        for (const auto &[site, p] : factors) {
            s.push_back(static_cast<char>(p));
        }
        return s;
    }

    PauliTerm shifted(long long k) const {
        PauliTerm t{coefficient, {}};
        for (const auto &[site, p] : factors) {
            t.factors[static_cast<std::size_t>(static_cast<long long>(site) + k)] = p;
        }
        return t;
    }

    bool operator==(const PauliTerm &) const = default;
};

struct HamiltonianSum {
    std::size_t n_sites = 0;
    int radius = 1;
    std::vector<PauliTerm> terms;

    HamiltonianSum &operator+=(const HamiltonianSum &other) {
        terms.insert(terms.end(), other.terms.begin(), other.terms.end());
        return *this;
    }
};

namespace detail {

inline PauliTerm term(double c, std::initializer_list<std::pair<std::size_t, Pauli>> f) {
    PauliTerm t{c, {}};
    for (const auto &[site, p] : f) {
        t.factors[site] = p;
    }
    return t;
}

inline void append_not_terms(std::vector<PauliTerm> &out, std::size_t i, GeneratorVariant v) {
    if (v == GeneratorVariant::paper_literal) {
        out.push_back(term(0.5, {{i, Pauli::X}}));
        out.push_back(term(0.5, {{i, Pauli::Z}}));
    } else {
        out.push_back(term(0.5, {}));
        out.push_back(term(-0.5, {{i, Pauli::X}}));
    }
}

inline void append_cn_terms(std::vector<PauliTerm> &out, std::size_t control, std::size_t target, GeneratorVariant v) {
    if (v == GeneratorVariant::paper_literal) {
        // (1 - Z_c)(X_t - 1) / 2
        out.push_back(term(0.5, {{target, Pauli::X}}));
        out.push_back(term(-0.5, {}));
        out.push_back(term(-0.5, {{control, Pauli::Z}, {target, Pauli::X}}));
        out.push_back(term(0.5, {{control, Pauli::Z}}));
    } else {
        // (1 - Z_c)(1 - X_t) / 4
        out.push_back(term(0.25, {}));
        out.push_back(term(-0.25, {{target, Pauli::X}}));
        out.push_back(term(-0.25, {{control, Pauli::Z}}));
        out.push_back(term(0.25, {{control, Pauli::Z}, {target, Pauli::X}}));
    }
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Matrix pauli_matrix(Pauli p) {
    Matrix m = Matrix::Zero(2, 2);
    switch (p) {
    case Pauli::I:
        m(0, 0) = m(1, 1) = 1.0;
        break;
    case Pauli::X:
        m(0, 1) = m(1, 0) = 1.0;
        break;
    case Pauli::Z:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    }
    return m;
}

} // namespace detail

/// Site Hamiltonian H_N^i + sum_k (H_CN^{i+k,i} + H_CN^{i-k,i}); neighbours
/// outside 0..n_sites-1 are dropped.
inline HamiltonianSum build_site_hamiltonian(std::size_t i, int r, std::size_t n_sites, GeneratorVariant variant) {
    Rule rule(r);
    if (i >= n_sites) {
        throw std::out_of_range("site outside the chain");
    }
    HamiltonianSum h{n_sites, r, {}};
    detail::append_not_terms(h.terms, i, variant);
    for (std::size_t k = 1; k <= static_cast<std::size_t>(r); ++k) {
        if (i + k < n_sites) {
            detail::append_cn_terms(h.terms, i + k, i, variant);
        }
        if (i >= k) {
            detail::append_cn_terms(h.terms, i - k, i, variant);
        }
    }
    return h;
}

inline HamiltonianSum build_chain_hamiltonian(std::size_t n_sites, int r, GeneratorVariant variant) {
    if (n_sites == 0) {
        throw std::invalid_argument("chain needs at least one site");
    }
    HamiltonianSum h{n_sites, r, {}};
    for (std::size_t i = 0; i < n_sites; ++i) {
        h += build_site_hamiltonian(i, r, n_sites, variant);
    }
    return h;
}

/// Like terms combined, zero coefficients dropped, ordered by site tuple then
/// operator string.
inline HamiltonianSum simplify(const HamiltonianSum &h) {
    std::map<std::pair<std::vector<std::size_t>, std::string>, double> acc;
    for (const auto &t : h.terms) {
        acc[{t.sites(), t.op_string()}] += t.coefficient;
    }
    HamiltonianSum out{h.n_sites, h.radius, {}};
    for (const auto &[key, c] : acc) {
        if (c == 0.0) {
            continue;
        }
        PauliTerm t{c, {}};
        for (std::size_t k = 0; k < key.first.size(); ++k) {
            t.factors[key.first[k]] = static_cast<Pauli>(key.second[k]);
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

/// `coeff site:op ...` per simplified term, sites 1-based.
inline std::string format_terms(const HamiltonianSum &h) {
    std::ostringstream os;
    for (const auto &t : simplify(h).terms) {
        os << format_real(t.coefficient);
        for (const auto &[site, p] : t.factors) {
            os << ' ' << (site + 1) << ':' << static_cast<char>(p);
        }
        os << '\n';
    }
    return os.str();
}

/// Dense matrix in the register order (site 0 most significant).
inline Matrix to_dense(const HamiltonianSum &h, std::size_t dense_limit = kDenseQubitLimit) {
    check_dense_limit(h.n_sites, dense_limit);
    const std::size_t dim = std::size_t{1} << h.n_sites;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &t : h.terms) {
        std::size_t xmask = 0;
        std::size_t zmask = 0;
        for (const auto &[site, p] : t.factors) {
            if (site >= h.n_sites) {
                throw std::out_of_range("term acts outside the chain");
            }
            const std::size_t bit = std::size_t{1} << (h.n_sites - 1 - site);
            if (p == Pauli::X) {
                xmask |= bit;
            } else if (p == Pauli::Z) {
                zmask |= bit;
            }
        }
        for (std::size_t i = 0; i < dim; ++i) {
            const double sign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(i ^ xmask), static_cast<Eigen::Index>(i)) += t.coefficient * sign;
        }
    }
    return m;
}

/// 2x2 NOT generator.
inline Matrix generator_not(GeneratorVariant variant) {
    const Matrix I = detail::pauli_matrix(Pauli::I);
    const Matrix X = detail::pauli_matrix(Pauli::X);
    const Matrix Z = detail::pauli_matrix(Pauli::Z);
    if (variant == GeneratorVariant::paper_literal) {
        return 0.5 * (Z + X);
    }
    return 0.5 * (I - X);
}

/// 4x4 CN generator on two adjacent register positions. The control gets
/// the Z factor and the target the X factor; `control_before_target` says
/// which of the two positions is the control.
inline Matrix generator_cn(GeneratorVariant variant, bool control_before_target = true) {
    const Matrix I = detail::pauli_matrix(Pauli::I);
    const Matrix X = detail::pauli_matrix(Pauli::X);
    const Matrix Z = detail::pauli_matrix(Pauli::Z);
    const Matrix c = I - Z;
    const Matrix t = variant == GeneratorVariant::paper_literal ? Matrix(X - I) : Matrix(I - X);
    const double scale = variant == GeneratorVariant::paper_literal ? 0.5 : 0.25;
    return scale * (control_before_target ? detail::kron(c, t) : detail::kron(t, c));
}

inline Matrix not_matrix() { return detail::pauli_matrix(Pauli::X); }

inline Matrix cn_matrix(bool control_before_target = true) {
    Circuit c(2);
    c.append(control_before_target ? Cn{0, 1} : Cn{1, 0});
    return circuit_matrix(c);
}

inline constexpr double kHermitianTolerance = 1e-10;

/// exp(i * scale * h) through the Hermitian eigendecomposition.
inline Matrix matrix_exp_hermitian(const Matrix &h, double scale) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("matrix_exp_hermitian needs a square matrix");
    }
    const double res = hermiticity_residual(h);
    if (res > kHermitianTolerance) {
        throw NotHermitian(res);
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigensolver failed");
    }
    const auto &vals = eig.eigenvalues();
    Eigen::VectorXcd phases(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        phases(k) = std::exp(cplx(0.0, scale * vals(k)));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

inline constexpr std::size_t kEvolutionComparisonSites = 8;

struct EvolutionComparison {
    std::size_t n_sites = 0;
    int radius = 1;
    GeneratorVariant variant = GeneratorVariant::verified;
    /// ||exp(i pi sum_i H_i) - prod_i exp(i pi H_i)||_max (site 0 first).
    double sum_vs_product = 0.0;
    /// ||prod_i exp(i pi H_i) - total unitary step circuit||_max
    double product_vs_circuit = 0.0;
    /// ||exp(i pi sum_i H_i) - total unitary step circuit||_max
    double sum_vs_circuit = 0.0;
};

/// Measures how far the exponentiated chain Hamiltonian is from the ordered
/// product of the per-site unitaries and from the gate circuit.
inline EvolutionComparison compare_total_evolution(std::size_t n_sites, int r, GeneratorVariant variant) {
    if (n_sites > kEvolutionComparisonSites) {
        throw DimensionTooLarge(n_sites, kEvolutionComparisonSites);
    }
    const double pi = std::acos(-1.0);
    EvolutionComparison cmp{n_sites, r, variant};
    const std::size_t dim = std::size_t{1} << n_sites;
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Matrix product = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < n_sites; ++i) {
        const Matrix hi = to_dense(build_site_hamiltonian(i, r, n_sites, variant));
        sum += hi;
        product = matrix_exp_hermitian(hi, pi) * product;
    }
    const Matrix exp_sum = matrix_exp_hermitian(sum, pi);
    const Matrix circuit = circuit_matrix(total_step_circuit(r, n_sites));
    cmp.sum_vs_product = max_abs(exp_sum - product);
    cmp.product_vs_circuit = max_abs(product - circuit);
    cmp.sum_vs_circuit = max_abs(exp_sum - circuit);
    return cmp;
}

} // namespace qsca
