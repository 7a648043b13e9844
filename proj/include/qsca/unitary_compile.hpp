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
 * Triangular nulling of a unitary into embedded 2x2 rotations and a diagonal
 * of phases (the beam-splitter / phase-shifter mesh).
 *
 * Column by column from the left, entries below the diagonal are zeroed
 * bottom-up by an SU(2) rotation G on the adjacent modes (i-1, i):
 *
 *     G_K ... G_1 U = D   =>   U = G_1^dagger ... G_K^dagger D
 *
 * The plan stores R_k = G_k^dagger in that order, so reconstruction is a
 * plain left-to-right product.
 */

#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "operator.hpp"

namespace qsca {

struct EmbeddedRotation {
    std::size_t i = 0;
    std::size_t j = 0;
    /// Row-major 2x2 block acting on modes (i, j).
    std::array<cplx, 4> u{};

    Matrix block() const {
        Matrix m(2, 2);
        m << u[0], u[1], u[2], u[3];
        return m;
    }

    /// Left-multiplies `m` by this rotation embedded in the identity.
    void apply_left(Matrix &m) const {
        const auto ri = static_cast<Eigen::Index>(i);
        const auto rj = static_cast<Eigen::Index>(j);
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const cplx a = m(ri, c);
            const cplx b = m(rj, c);
            m(ri, c) = u[0] * a + u[1] * b;
            m(rj, c) = u[2] * a + u[3] * b;
        }
    }

    Matrix embedded(std::size_t dim) const {
        Matrix m = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        apply_left(m);
        return m;
    }
};

struct ReckPlan {
    std::size_t dimension = 0;
    std::vector<EmbeddedRotation> rotations;
    std::vector<cplx> phases;
};

inline constexpr double kDefaultUnitaryTolerance = 1e-10;

inline ReckPlan reck_decompose(const Matrix &u, double tol = kDefaultUnitaryTolerance) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw std::invalid_argument("reck_decompose needs a nonempty square matrix");
    }
    const double residual = unitarity_residual(u);
    if (residual > tol) {
        throw NotUnitary(residual);
    }
    const auto n = static_cast<std::size_t>(u.rows());
    ReckPlan plan;
    plan.dimension = n;
    Matrix w = u;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        const auto col = static_cast<Eigen::Index>(c);
        for (std::size_t i = n - 1; i > c; --i) {
            const auto ri = static_cast<Eigen::Index>(i);
            const cplx b = w(ri, col);
            if (std::abs(b) <= tol) {
                w(ri, col) = 0.0;
                continue;
            }
            const cplx a = w(ri - 1, col);
            const double rho = std::hypot(std::abs(a), std::abs(b));
            // G [a; b] = [rho; 0], det G = 1.
            const EmbeddedRotation g{i - 1, i, {std::conj(a) / rho, std::conj(b) / rho, -b / rho, a / rho}};
            g.apply_left(w);
            w(ri, col) = 0.0;
            plan.rotations.push_back(
                {i - 1, i, {std::conj(g.u[0]), std::conj(g.u[2]), std::conj(g.u[1]), std::conj(g.u[3])}});
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        plan.phases.push_back(w(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
    }
    return plan;
}

inline Matrix reck_reconstruct(const ReckPlan &plan) {
    const auto n = static_cast<Eigen::Index>(plan.dimension);
    if (plan.phases.size() != plan.dimension) {
        throw std::invalid_argument("plan needs one phase per mode");
    }
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = plan.phases[static_cast<std::size_t>(k)];
    }
    for (auto it = plan.rotations.rbegin(); it != plan.rotations.rend(); ++it) {
        it->apply_left(m);
    }
    return m;
}

/// `R i j u00re u00im u01re u01im u10re u10im u11re u11im` per rotation, then
/// `P k re im` per phase. Modes are 1-based.
inline std::string format_plan(const ReckPlan &plan) {
    std::ostringstream os;
    for (const auto &r : plan.rotations) {
        os << "R " << (r.i + 1) << ' ' << (r.j + 1);
        for (const auto &v : r.u) {
            os << ' ' << format_real(v.real()) << ' ' << format_real(v.imag());
        }
        os << '\n';
    }
    for (std::size_t k = 0; k < plan.phases.size(); ++k) {
        os << "P " << (k + 1) << ' ' << format_real(plan.phases[k].real()) << ' '
           << format_real(plan.phases[k].imag()) << '\n';
    }
    return os.str();
}

inline ReckPlan parse_plan(std::string_view text) {
    ReckPlan plan;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) {
            continue;
        }
        if (tag == "R") {
            EmbeddedRotation r;
            std::size_t i = 0;
            std::size_t j = 0;
            if (!(ls >> i >> j) || i == 0 || j == 0) {
                throw ParseError(line_no, "bad rotation modes");
            }
            r.i = i - 1;
            r.j = j - 1;
            for (auto &v : r.u) {
                double re = 0.0;
                double im = 0.0;
                if (!(ls >> re >> im)) {
                    throw ParseError(line_no, "rotation needs 8 real numbers");
                }
                v = cplx(re, im);
            }
            plan.rotations.push_back(r);
        } else if (tag == "P") {
            std::size_t k = 0;
            double re = 0.0;
            double im = 0.0;
            if (!(ls >> k >> re >> im) || k != plan.phases.size() + 1) {
                throw ParseError(line_no, "phases must be listed in order as P k re im");
            }
            plan.phases.emplace_back(re, im);
        } else {
            throw ParseError(line_no, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) {
            throw ParseError(line_no, "trailing content");
        }
    }
    plan.dimension = plan.phases.size();
    for (const auto &r : plan.rotations) {
        if (r.i >= plan.dimension || r.j >= plan.dimension) {
            throw ParseError(0, "rotation mode outside the plan dimension");
        }
    }
    return plan;
}

} // namespace qsca
