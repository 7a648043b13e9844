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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "sca_core.hpp"
#include "state_vector.hpp"

namespace qsca {

/// One generator per invocation; everything randomized draws from it.
using Rng = std::mt19937_64;

inline std::uint8_t random_bit(Rng &rng) { return static_cast<std::uint8_t>(rng() & 1u); }

inline BasicString random_block(Rng &rng, std::size_t len, bool nonzero) {
    BasicString b(len);
    do {
        for (auto &x : b) {
            x = random_bit(rng);
        }
    } while (nonzero && is_null(b));
    return b;
}

/// Particle of L blocks starting at site 0 with nonzero first and last blocks.
inline Particle random_particle(const Rule &rule, std::size_t L, Rng &rng) {
    Particle p;
    for (std::size_t k = 0; k < L; ++k) {
        p.blocks.push_back(random_block(rng, rule.block_length(), k == 0 || k + 1 == L));
    }
    return p;
}

inline double uniform_real(Rng &rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

inline StateVector random_state(std::size_t n_qubits, Rng &rng) {
    StateVector s(n_qubits);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        s[i] = cplx(uniform_real(rng), uniform_real(rng));
    }
    s *= cplx(1.0 / s.norm(), 0.0);
    return s;
}

/// Unitary from the QR factorization of a random complex matrix, with R's
/// diagonal phases folded back into Q.
inline Matrix random_unitary(std::size_t n, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        for (Eigen::Index j = 0; j < z.cols(); ++j) {
            z(i, j) = cplx(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

} // namespace qsca
