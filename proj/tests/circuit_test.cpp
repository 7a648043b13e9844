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

#include <gtest/gtest.h>

#include "qsca/circuit.hpp"
#include "qsca/quantize.hpp"
#include "qsca/random.hpp"
#include "test_util.hpp"

namespace qsca {
namespace {

using testing::cn_oracle;
using testing::on_qubit;
using testing::reset_oracle;

Matrix gate_oracle(std::size_t n, const GateOp &op) {
    if (const auto *g = std::get_if<Not>(&op)) {
        return on_qubit(n, g->qubit, testing::X2());
    }
    if (const auto *g = std::get_if<Cn>(&op)) {
        return cn_oracle(n, g->control, g->target);
    }
    if (const auto *g = std::get_if<CollectiveCn>(&op)) {
        Matrix m = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
        for (std::size_t k = 0; k < g->len; ++k) {
            m = cn_oracle(n, g->control_start + k, g->target_start + k) * m;
        }
        return m;
    }
    const auto &g = std::get<BlockReset>(op);
    return reset_oracle(n, g.start, g.len, g.variant);
}

Matrix circuit_oracle(const Circuit &c) {
    const auto dim = Eigen::Index{1} << c.n_qubits();
    Matrix m = Matrix::Identity(dim, dim);
    for (const auto &op : c.ops()) {
        m = gate_oracle(c.n_qubits(), op) * m;
    }
    return m;
}

Circuit random_circuit(std::size_t n, std::size_t count, Rng &rng, bool with_resets) {
    Circuit c(n);
    std::uniform_int_distribution<std::size_t> q(0, n - 1);
    while (c.size() < count) {
        switch (rng() % (with_resets ? 4 : 3)) {
        case 0:
            c.append(Not{q(rng)});
            break;
        case 1: {
            const auto a = q(rng);
            const auto b = q(rng);
            if (a != b) {
                c.append(Cn{a, b});
            }
            break;
        }
        case 2:
            if (n >= 2) {
                const std::size_t len = 1 + rng() % (n / 2);
                c.append(CollectiveCn{0, n - len, len});
            }
            break;
        default: {
            const std::size_t start = q(rng);
            const std::size_t len = 1 + rng() % (n - start);
            c.append(BlockReset{start, len, rng() % 2 ? ResetVariant::extended : ResetVariant::paper_literal});
        }
        }
    }
    return c;
}

StateVector matrix_times(const Matrix &m, const StateVector &s) {
    Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
    const Eigen::VectorXcd out = m * v;
    return StateVector(s.n_qubits(), std::vector<cplx>(out.data(), out.data() + out.size()));
}

TEST(GatelistTest, ParsesOneBasedIndices) {
    const auto c = parse_gatelist("X 3\nCN 1 4\n");
    EXPECT_EQ(c.n_qubits(), 4u);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(std::get<Not>(c.ops()[0]), Not{2});
    EXPECT_EQ(std::get<Cn>(c.ops()[1]), (Cn{0, 3}));
    EXPECT_EQ(parse_gatelist("X 1\n", 5).n_qubits(), 5u);
}

TEST(GatelistTest, GoldenNormalizesAndRoundTrips) {
    const auto raw = testing::read_text(QSCA_TEST_DATA_DIR "/golden.gates");
    const auto norm = testing::read_text(QSCA_TEST_DATA_DIR "/golden_normalized.gates");
    ASSERT_FALSE(raw.empty());
    EXPECT_EQ(normalize_gatelist(raw), norm);
    EXPECT_EQ(emit_gatelist(parse_gatelist(norm)), norm);
    EXPECT_EQ(parse_gatelist(raw), parse_gatelist(norm));
}

TEST(GatelistTest, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string &text) -> std::size_t {
        try {
            parse_gatelist(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("X 1\nY 2\n"), 2u);
    EXPECT_EQ(line_of("# c\n\nCN 1\n"), 3u);
    EXPECT_EQ(line_of("X 0\n"), 1u);
    EXPECT_EQ(line_of("X 1\nRESET 1 2 sideways\n"), 2u);
    EXPECT_EQ(line_of("X 1\nCN 2 2\n"), 2u);
    EXPECT_EQ(line_of("X -1\n"), 1u);
    EXPECT_THROW(parse_gatelist("X 5\n", 3), ParseError);
    EXPECT_THROW(parse_gatelist("CCN 1 2 2\n"), ParseError);
}

TEST(CircuitTest, ValidatesOnAppend) {
    Circuit c(3);
    EXPECT_THROW(c.append(Not{3}), std::out_of_range);
    EXPECT_THROW(c.append(Cn{1, 1}), std::invalid_argument);
    EXPECT_THROW(c.append(BlockReset{2, 2, ResetVariant::extended}), std::out_of_range);
    EXPECT_THROW(c.then(Circuit(4)), std::invalid_argument);
    EXPECT_THROW(Circuit(0), std::invalid_argument);
}

TEST(CircuitTest, EmptyCircuitIsIdentity) {
    Rng rng(1);
    const auto s = random_state(3, rng);
    EXPECT_EQ(apply_circuit(s, Circuit(3)), s);
    EXPECT_EQ(max_abs(circuit_matrix(Circuit(3)) - Matrix::Identity(8, 8)), 0.0);
}

TEST(CircuitTest, WindowCircuitSetsIsolatedCenter) {
    const auto c = build_window_circuit(2);
    EXPECT_EQ(emit_gatelist(c), "CN 1 3\nCN 2 3\nCN 4 3\nCN 5 3\nX 3\n");
    EXPECT_EQ(apply_circuit(basis_state(bits_from_string("00000")), c), basis_state(bits_from_string("00100")));
}

TEST(CircuitTest, LaterOpsActAfterEarlierOnes) {
    // X then CN differs from CN then X on |00>.
    const Circuit a(2, {Not{0}, Cn{0, 1}});
    const Circuit b(2, {Cn{0, 1}, Not{0}});
    const auto zero = basis_state(bits_from_string("00"));
    EXPECT_EQ(apply_circuit(zero, a), basis_state(bits_from_string("11")));
    EXPECT_EQ(apply_circuit(zero, b), basis_state(bits_from_string("10")));
    Circuit ab = a;
    ab.then(b);
    EXPECT_LE(max_abs(circuit_matrix(ab) - circuit_matrix(b) * circuit_matrix(a)), 0.0);
}

TEST(CircuitTest, MatrixMatchesKroneckerOracle) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_circuit(4, 12, rng, true);
        EXPECT_EQ(max_abs(circuit_matrix(c) - circuit_oracle(c)), 0.0) << emit_gatelist(c);
    }
}

TEST(CircuitTest, SparseAndDensePathsAgree) {
    Rng rng(6);
    const std::size_t n = 8;
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_circuit(n, 40, rng, true);
        const auto m = circuit_oracle(c);
        // A handful of amplitudes takes the entry-list path ...
        StateVector sparse(n);
        for (int k = 0; k < 5; ++k) {
            sparse[rng() % sparse.dimension()] += cplx(uniform_real(rng), uniform_real(rng));
        }
        EXPECT_LE(apply_circuit(sparse, c).max_abs_diff(matrix_times(m, sparse)), 1e-14);
        // ... a full random state takes the per-gate sweep.
        const auto dense = random_state(n, rng);
        EXPECT_LE(apply_circuit(dense, c).max_abs_diff(matrix_times(m, dense)), 1e-14);
        // And superposing them stays linear across the path switch.
        const auto both = sparse + dense;
        EXPECT_LE(apply_circuit(both, c).max_abs_diff(apply_circuit(sparse, c) + apply_circuit(dense, c)), 1e-13);
    }
}

TEST(CircuitTest, ResetsAnnihilateUnderSparsePath) {
    const Circuit c(3, {BlockReset{0, 2, ResetVariant::paper_literal}});
    EXPECT_EQ(apply_circuit(basis_state(bits_from_string("001")), c), StateVector(3));
    EXPECT_EQ(apply_circuit(basis_state(bits_from_string("101")), c), basis_state(bits_from_string("001")));
}

TEST(CircuitTest, UnitaryFlag) {
    EXPECT_TRUE(build_window_circuit(1).is_unitary());
    EXPECT_FALSE(Circuit(2, {BlockReset{0, 1, ResetVariant::extended}}).is_unitary());
}

TEST(CircuitTest, DenseLimit) { EXPECT_THROW(circuit_matrix(Circuit(kDenseQubitLimit + 1)), DimensionTooLarge); }

} // namespace
} // namespace qsca
