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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bits.hpp"
#include "errors.hpp"

namespace qsca {

using cplx = std::complex<double>;

/// Dense operator on a 2^n-dimensional space.
using Matrix = Eigen::MatrixXcd;

/// Sparse operator, row-major so triplet export walks rows in order.
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    cplx value;
};

/// Default ceiling on the qubit count of any dense matrix realization.
inline constexpr std::size_t kDenseQubitLimit = 14;

inline void check_dense_limit(std::size_t n_qubits, std::size_t limit = kDenseQubitLimit) {
    if (n_qubits > limit) {
        throw DimensionTooLarge(n_qubits, limit);
    }
}

/// Builds a square sparse operator; (row, col) pairs must be unique.
inline SparseMatrix sparse_from_triplets(std::size_t dim, const std::vector<Triplet> &entries) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(entries.size());
    for (const auto &t : entries) {
        if (t.row >= dim || t.col >= dim) {
            throw std::out_of_range("triplet index outside the operator");
        }
        if (!seen.emplace(t.row, t.col).second) {
            throw std::invalid_argument("duplicate (row, col) in triplet list");
        }
        trips.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), t.value);
    }
    SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

/// Nonzero entries in ascending row-major order.
inline std::vector<Triplet> to_triplets(const SparseMatrix &m) {
    std::vector<Triplet> out;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            if (it.value() != cplx(0.0, 0.0)) {
                out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
            }
        }
    }
    return out;
}

inline double max_abs(const Matrix &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double max_abs(const SparseMatrix &m) {
    double best = 0.0;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            best = std::max(best, std::abs(it.value()));
        }
    }
    return best;
}

inline double hermiticity_residual(const Matrix &m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return best;
}

/// ||U^dagger U - I||_max.
inline double unitarity_residual(const Matrix &u) {
    Matrix g = u.adjoint() * u;
    g.diagonal().array() -= cplx(1.0, 0.0);
    return max_abs(g);
}

/// ||A - e^{i phi} B||_max minimized over the phase aligning tr(B^dagger A).
/// Exploratory comparisons only; gate equality elsewhere is exact.
inline double distance_up_to_phase(const Matrix &a, const Matrix &b) {
    const cplx overlap = (b.adjoint() * a).trace();
    const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
    return max_abs(a - phase * b);
}

namespace detail {

inline std::string format_value(cplx v) {
    if (v.imag() == 0.0) {
        return format_real(v.real());
    }
    return "(" + format_real(v.real()) + "," + format_real(v.imag()) + ")";
}

} // namespace detail

/// `row col value` per nonzero entry, 1-based, ascending row-major. Real
/// values print with 17 significant digits (integers print bare, so 0/1
/// matrices are bit-exact); complex values print as (re,im).
inline std::string format_triplets(const SparseMatrix &m) {
    std::ostringstream os;
    for (const auto &t : to_triplets(m)) {
        os << (t.row + 1) << ' ' << (t.col + 1) << ' ' << detail::format_value(t.value) << '\n';
    }
    return os.str();
}

inline constexpr std::size_t kCsvDimensionLimit = 4096;

/// Dense CSV of an integer-valued real matrix, one row per line.
inline std::string format_dense_csv(const Matrix &m) {
    if (static_cast<std::size_t>(m.rows()) > kCsvDimensionLimit) {
        throw std::length_error("dense CSV export is limited to dimension 4096");
    }
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const cplx v = m(i, j);
            if (v.imag() != 0.0 || v.real() != std::round(v.real())) {
                throw std::invalid_argument("dense CSV export requires integer entries");
            }
            if (j) {
                os << ',';
            }
            os << static_cast<long long>(v.real());
        }
        os << '\n';
    }
    return os.str();
}

} // namespace qsca
