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

#include <cmath>

#include <gtest/gtest.h>

#include "qsca/quantize.hpp"
#include "qsca/random.hpp"
#include "test_util.hpp"

namespace qsca {
namespace {

using testing::Cells;

TEST(TransitionOperatorTest, EqualsDyadSum) {
    for (int r = 1; r <= 3; ++r) {
        EXPECT_EQ(max_abs(build_uf_matrix(r).dense() - testing::dyad_sum_uf(r)), 0.0) << "r=" << r;
    }
}

TEST(TransitionOperatorTest, KroneckerDeltaForms) {
    for (int r = 1; r <= 2; ++r) {
        const auto t = build_uf_matrix(r);
        // Restricted to nonzero words the delta form is U_f itself ...
        EXPECT_EQ(max_abs(t.dense() - testing::kron_delta_uf(r, false)), 0.0);
        // ... and with the null word it is the gate circuit.
        EXPECT_EQ(max_abs(circuit_matrix(build_window_circuit(r)) - testing::kron_delta_uf(r, true)), 0.0);
    }
}

TEST(TransitionOperatorTest, ShapeAndRadiusRange) {
    const auto t = build_uf_matrix(2);
    EXPECT_EQ(t.dimension(), 32u);
    EXPECT_EQ(t.matrix.nonZeros(), 31);
    EXPECT_EQ(t.null_word, 0u);
    EXPECT_EQ(t.preimage_word, 0b00100u);
    EXPECT_THROW(build_uf_matrix(0), std::invalid_argument);
    EXPECT_THROW(build_uf_matrix(7), std::invalid_argument);
}

TEST(TransitionOperatorTest, BasisStatesMapThroughF) {
    const auto t = build_uf_matrix(1);
    // Odd sides leave the centre alone; even sides flip it.
    EXPECT_EQ(apply_transition(t, basis_state(bits_from_string("011"))), basis_state(bits_from_string("011")));
    EXPECT_EQ(apply_transition(t, basis_state(bits_from_string("100"))), basis_state(bits_from_string("100")));
    EXPECT_EQ(apply_transition(t, basis_state(bits_from_string("101"))), basis_state(bits_from_string("111")));
    EXPECT_EQ(apply_transition(t, basis_state(bits_from_string("010"))), basis_state(bits_from_string("000")));
    EXPECT_EQ(apply_transition(t, basis_state(bits_from_string("000"))), StateVector(3));
    for (Word x = 1; x < 8; ++x) {
        EXPECT_EQ(apply_transition(t, basis_state_index(3, x)), basis_state_index(3, testing::f_oracle(1, x)));
    }
}

TEST(PartialIsometryTest, ResidualsVanish) {
    for (int r = 1; r <= 3; ++r) {
        const auto rep = check_partial_isometry(build_uf_matrix(r));
        EXPECT_EQ(rep.range_residual, 0.0);
        EXPECT_EQ(rep.domain_residual, 0.0);
        EXPECT_EQ(rep.initial_projector_residual, 0.0);
        EXPECT_TRUE(rep.annihilates_null);
        EXPECT_TRUE(rep.holds());
    }
}

TEST(PartialIsometryTest, DetectsCorruption) {
    auto t = build_uf_matrix(1);
    Matrix d = t.dense();
    d(0, 0) = 1.0; // null word no longer annihilated
    t.matrix = d.sparseView();
    const auto rep = check_partial_isometry(t);
    EXPECT_FALSE(rep.annihilates_null);
    EXPECT_GT(rep.domain_residual, 0.0);
    EXPECT_FALSE(rep.holds());

    auto t2 = build_uf_matrix(1);
    Matrix d2 = t2.dense();
    d2 *= 2.0;
    t2.matrix = d2.sparseView();
    EXPECT_FALSE(check_partial_isometry(t2).holds());
}

TEST(BlockFormTest, PartitionSizes) {
    for (int r = 1; r <= 3; ++r) {
        const auto p = partition_basis(r);
        const std::size_t dim = std::size_t{1} << (2 * r + 1);
        EXPECT_EQ(p.invariant_words.size(), dim / 2);
        EXPECT_EQ(p.flipped_words.size(), dim / 2);
        EXPECT_EQ(p.flipped_words.front(), 0u);
        EXPECT_EQ(p.flipped_words.back(), null_preimage_word(Rule(r)));
        for (Word x : p.invariant_words) {
            EXPECT_EQ(testing::f_oracle(r, x), x);
        }
        // Mirrored positions are centre flips; f swaps every pair except the null one.
        const auto &fl = p.flipped_words;
        for (std::size_t i = 0; i < fl.size(); ++i) {
            EXPECT_EQ(fl[fl.size() - 1 - i], center_flip(Rule(r), fl[i]));
            if (fl[i] != 0) {
                EXPECT_EQ(testing::f_oracle(r, fl[i]), fl[fl.size() - 1 - i]);
            }
        }
    }
}

TEST(BlockFormTest, BlockedMatrixR1) {
    const auto p = partition_basis(1);
    const Matrix b = Matrix(represent_blocked(build_uf_matrix(1), p));
    Matrix want = Matrix::Zero(8, 8);
    for (int i = 0; i < 4; ++i) {
        want(i, i) = 1.0;
    }
    // Antidiagonal on the last four, column of the null word empty.
    want(4, 7) = 1.0;
    want(5, 6) = 1.0;
    want(6, 5) = 1.0;
    EXPECT_EQ(max_abs(b - want), 0.0);
    const auto rep = check_block_form(represent_blocked(build_uf_matrix(1), p), 4);
    EXPECT_TRUE(rep.holds());
}

TEST(BlockFormTest, HoldsUpToR3AndRejectsOtherSplits) {
    for (int r = 1; r <= 3; ++r) {
        const auto p = partition_basis(r);
        const auto blocked = represent_blocked(build_uf_matrix(r), p);
        EXPECT_TRUE(check_block_form(blocked, p.invariant_words.size()).holds());
        EXPECT_FALSE(check_block_form(blocked, p.invariant_words.size() - 1).holds());
    }
    EXPECT_THROW(represent_blocked(build_uf_matrix(1), partition_basis(2)), std::invalid_argument);
}

TEST(FactorizationTest, CircuitTimesVacuumComplementIsUf) {
    for (int r = 1; r <= 3; ++r) {
        Matrix c = circuit_matrix(build_window_circuit(r));
        // Null word goes to a_0 under the circuit.
        EXPECT_EQ(c(static_cast<Eigen::Index>(null_preimage_word(Rule(r))), 0), cplx(1.0));
        c.col(0).setZero();
        EXPECT_EQ(max_abs(c - testing::dyad_sum_uf(r)), 0.0);
    }
}

TEST(FactorizationTest, SiteCircuitAtBoundaryDropsMissingNeighbours) {
    EXPECT_EQ(emit_gatelist(build_uf_circuit(2, 0, 4)), "CN 2 1\nCN 3 1\nX 1\n");
    EXPECT_EQ(emit_gatelist(build_uf_circuit(1, 3, 4)), "CN 3 4\nX 4\n");
    EXPECT_THROW(build_uf_circuit(1, 4, 4), std::out_of_range);
}

std::size_t image_of(const Matrix &m, std::size_t col) {
    Eigen::Index row = -1;
    m.col(static_cast<Eigen::Index>(col)).cwiseAbs().maxCoeff(&row);
    return static_cast<std::size_t>(row);
}

TEST(TotalStepTest, UnitaryCircuitMatchesChainSweep) {
    for (int r = 1; r <= 2; ++r) {
        for (std::size_t n = 1; n <= 7; ++n) {
            const Matrix m = circuit_matrix(total_step_circuit(r, n));
            EXPECT_LE(unitarity_residual(m), 1e-12);
            for (Word x = 0; x < (Word{1} << n); ++x) {
                const Cells want = testing::chain_sweep(r, testing::word_cells(x, static_cast<int>(n)), false);
                EXPECT_EQ(image_of(m, x), testing::cells_word(want)) << "r=" << r << " n=" << n << " x=" << x;
            }
        }
    }
}

TEST(TotalStepTest, VacuumUnderUnitaryCircuit) {
    // Every site sees an all-zero window in turn; the X fires on site 0 and
    // the fresh 1 then shields site 1, leaving 101 on three sites.
    const auto out = apply_circuit(basis_state(bits_from_string("000")), total_step_circuit(1, 3));
    EXPECT_EQ(out, basis_state(bits_from_string("101")));
}

TEST(TotalStepTest, OperatorMatchesVacuumPreservingSweep) {
    for (int r = 1; r <= 3; ++r) {
        for (std::size_t n = 1; n <= 8; ++n) {
            const Matrix m = Matrix(total_step_operator(r, n));
            for (Word x = 0; x < (Word{1} << n); ++x) {
                const Cells want = testing::chain_sweep(r, testing::word_cells(x, static_cast<int>(n)), true);
                EXPECT_EQ(image_of(m, x), testing::cells_word(want));
                EXPECT_EQ(m.col(static_cast<Eigen::Index>(x)).cwiseAbs().sum(), 1.0);
            }
        }
    }
    const auto op = std::get<SparseMatrix>(total_step(1, 4, TotalStepMode::partial_isometry));
    EXPECT_EQ(Matrix(op)(0, 0), cplx(1.0));
    EXPECT_TRUE(std::holds_alternative<Circuit>(total_step(1, 4, TotalStepMode::unitary_circuit)));
    EXPECT_THROW(total_step_operator(1, kDenseQubitLimit + 1), DimensionTooLarge);
}

TEST(TotalStepTest, OperatorIsShiftCovariantAwayFromTheEdge) {
    // A particle placed further right evolves the same way, shifted.
    const std::size_t n = 12;
    const Matrix m = Matrix(total_step_operator(1, n));
    const Word base = 0b11;
    for (std::size_t k = 1; k + 2 + 4 < n; ++k) {
        const Word at_k = base << (n - 2 - k);
        const Word at_k1 = base << (n - 3 - k);
        EXPECT_EQ(image_of(m, at_k) >> 1, image_of(m, at_k1));
    }
}

TEST(ParallelismTest, OneApplicationCoversEveryImage) {
    for (int r = 1; r <= 3; ++r) {
        const auto rep = parallelism_demo(r);
        const std::size_t dim = std::size_t{1} << (2 * r + 1);
        EXPECT_EQ(rep.operator_applications, 1u);
        EXPECT_EQ(rep.input_terms, dim - 1);
        EXPECT_EQ(rep.support.size(), dim - 1);
        EXPECT_TRUE(rep.support_matches);
        EXPECT_EQ(rep.missing_word, null_preimage_word(Rule(r)));
        EXPECT_NEAR(rep.expected_amplitude, 1.0 / std::sqrt(static_cast<double>(dim - 1)), 1e-15);
        EXPECT_LE(rep.max_amplitude_error, 1e-15);
        EXPECT_NEAR(rep.norm, 1.0, 1e-12);
    }
}

TEST(ParallelismTest, NormPreservedOffTheNullWord) {
    Rng rng(7);
    for (int r = 1; r <= 3; ++r) {
        const auto t = build_uf_matrix(r);
        for (int trial = 0; trial < 10; ++trial) {
            auto v = random_state(t.n_qubits(), rng);
            v[0] = 0.0;
            const double before = v.norm();
            EXPECT_NEAR(apply_transition(t, v).norm(), before, 1e-12);
        }
    }
}

} // namespace
} // namespace qsca
