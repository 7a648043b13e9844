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

#include "qsca/frt_quantum.hpp"
#include "qsca/random.hpp"
#include "test_util.hpp"

namespace qsca {
namespace {

using testing::Cells;
using testing::oracle_run;

std::vector<BasicString> blocks_of(std::initializer_list<const char *> text) {
    std::vector<BasicString> out;
    for (const char *t : text) {
        out.push_back(bits_from_string(t));
    }
    return out;
}

TEST(ParticleStateTest, LayoutAndValidation) {
    const auto reg = make_particle_state(blocks_of({"101", "011"}), 2);
    EXPECT_EQ(reg.radius, 2);
    EXPECT_EQ(reg.n_blocks, 4u);
    EXPECT_EQ(reg.state.n_qubits(), 12u);
    EXPECT_EQ(reg.state, basis_state(bits_from_string("101011000000")));
    EXPECT_EQ(describe_register(reg), "101 011 O O");
    EXPECT_THROW(make_particle_state(blocks_of({"101", "011"}), 0), std::invalid_argument);
    EXPECT_THROW(make_particle_state(blocks_of({"000", "011"}), 2), std::invalid_argument);
    EXPECT_THROW(make_particle_state(blocks_of({"1"}), 2), std::invalid_argument);
    EXPECT_THROW(make_particle_state({}, 2), std::invalid_argument);
}

TEST(StageCircuitTest, GateList) {
    const auto c = frt_stage_circuit(1, 5, 1, 2, ResetVariant::extended);
    EXPECT_EQ(emit_gatelist(c), "CCN 3 5 2\nCCN 3 7 2\nRESET 3 2 extended\n");
    EXPECT_THROW(frt_stage_circuit(1, 5, 3, 2, ResetVariant::extended), std::out_of_range);
}

TEST(StageTest, FirstStagesOnTwoBlocks) {
    // |A1 A2 O O O> -> |O A1^A2 A1 O O> -> |O O A2 A1^A2 O> -> |O O O A1 A2>.
    const auto A1 = bits_from_string("10");
    const auto A2 = bits_from_string("11");
    const auto rep = run_frt({A1, A2}, 3);
    ASSERT_EQ(rep.stage_descriptions.size(), 4u);
    EXPECT_EQ(rep.stage_descriptions[0], "10 11 O O O");
    EXPECT_EQ(rep.stage_descriptions[1], "O 01 10 O O");
    EXPECT_EQ(rep.stage_descriptions[2], "O O 11 01 O");
    EXPECT_EQ(rep.stage_descriptions[3], "O O O 10 11");
    EXPECT_TRUE(rep.all_stages_match());
    EXPECT_TRUE(rep.final_is_translation);
    EXPECT_EQ(rep.final_register.state, basis_state(bits_from_string("0000001011")));
}

TEST(StageTest, PaddingTwoLeavesAPermutedParticle) {
    // Two stages are one short of the L+1 cycle: |O O A2 A1^A2>.
    const auto rep = run_frt(blocks_of({"10", "11"}), 2);
    EXPECT_EQ(rep.stage_descriptions.back(), "O O 11 01");
    EXPECT_TRUE(rep.all_stages_match());
    EXPECT_FALSE(rep.final_is_translation);
    EXPECT_EQ(format_frt_run(rep), "stage 0: 10 11 O O\nstage 1: O 01 10 O\nstage 2: O O 11 01\n"
                                   "translated_by_padding no\n");
}

TEST(StageTest, LongerPaddingCyclesWithPeriodLPlusOne) {
    const auto blocks = blocks_of({"10", "11"});
    for (std::size_t padding = 1; padding <= 7; ++padding) {
        const auto rep = run_frt(blocks, padding);
        EXPECT_TRUE(rep.all_stages_match()) << padding;
        EXPECT_EQ(rep.final_is_translation, padding % 3 == 0) << padding;
    }
}

TEST(StageTest, AgreesWithBitOracle) {
    Rng rng(11);
    for (int r = 1; r <= 2; ++r) {
        for (std::size_t L = 1; L <= 3; ++L) {
            for (int trial = 0; trial < 10; ++trial) {
                const auto p = random_particle(Rule(r), L, rng);
                const std::size_t padding = 1 + rng() % (L + 2);
                if ((L + padding) * static_cast<std::size_t>(r + 1) > 18) {
                    continue;
                }
                const auto rep = run_frt(p.blocks, padding);
                EXPECT_EQ(rep.stage_descriptions, oracle_run(p.blocks, padding));
            }
        }
    }
}

TEST(StageTest, LiteralResetAnnihilatesOnNullLeadingBlock) {
    // 11 11: after one stage the new leading block is 11^11 = O.
    const auto blocks = blocks_of({"11", "11"});
    EXPECT_TRUE(literal_reset_annihilates(blocks, 3, 2));
    EXPECT_FALSE(literal_reset_annihilates(blocks, 3, 1));
    const auto lit = run_frt(blocks, 3, ResetVariant::paper_literal);
    EXPECT_EQ(lit.stage_descriptions[1], "O O 11 O O");
    EXPECT_EQ(lit.stage_descriptions[2], "0");
    EXPECT_EQ(lit.stage_descriptions[3], "0");
    EXPECT_TRUE(lit.all_stages_match());
    EXPECT_FALSE(lit.final_is_translation);
    const auto ext = run_frt(blocks, 3, ResetVariant::extended);
    EXPECT_TRUE(ext.final_is_translation);
}

TEST(StageTest, LiteralAndExtendedAgreeWithoutNullLeaders) {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_particle(Rule(1), 3, rng);
        if (literal_reset_annihilates(p.blocks, 4, 4)) {
            continue;
        }
        const auto lit = run_frt(p.blocks, 4, ResetVariant::paper_literal);
        const auto ext = run_frt(p.blocks, 4, ResetVariant::extended);
        EXPECT_EQ(lit.stage_descriptions, ext.stage_descriptions);
        EXPECT_TRUE(lit.final_is_translation);
    }
}

TEST(StageTest, SuperpositionsEvolveLinearly) {
    const auto a = make_particle_state(blocks_of({"10", "11"}), 3);
    const auto b = make_particle_state(blocks_of({"01", "01"}), 3);
    const double h = 1.0 / std::sqrt(2.0);
    BlockRegister sup = a;
    sup.state = h * a.state + cplx(0.0, h) * b.state;
    const auto runs = run_frt_register(sup, 2, ResetVariant::extended);
    ASSERT_EQ(runs.size(), 4u);
    const auto ra = run_frt_register(a, 2, ResetVariant::extended);
    const auto rb = run_frt_register(b, 2, ResetVariant::extended);
    for (std::size_t s = 0; s < runs.size(); ++s) {
        EXPECT_LE(runs[s].state.max_abs_diff(h * ra[s].state + cplx(0.0, h) * rb[s].state), 1e-15);
    }
    const auto text = describe_register(runs.back());
    EXPECT_NE(text.find(",0)|O O O 10 11>"), std::string::npos) << text;
    EXPECT_NE(text.find("(0,0.707"), std::string::npos) << text;
    EXPECT_NE(text.find(")|O O O 01 01>"), std::string::npos) << text;
    EXPECT_THROW(run_frt_register(a, 5, ResetVariant::extended), std::invalid_argument);
}

TEST(StageTest, PlanFlattensToTheStageSequence) {
    const auto plan = make_stage_plan(1, 2, 3, ResetVariant::extended);
    ASSERT_EQ(plan.stages.size(), 3u);
    const auto flat = plan.flattened();
    EXPECT_EQ(flat.size(), 9u);
    const auto reg = make_particle_state(blocks_of({"10", "11"}), 3);
    EXPECT_EQ(describe_entries(nonzero_entries(apply_circuit(reg.state, flat)), 5, 2), "O O O 10 11");
}

TEST(StageIdentityTest, ExhaustiveSmallCases) {
    for (int r = 1; r <= 2; ++r) {
        for (std::size_t L = 1; L <= 2; ++L) {
            const auto rep = stage_identity_check(L, r);
            EXPECT_TRUE(rep.holds()) << "r=" << r << " L=" << L;
        }
    }
    // Valid first and last blocks: (2^{r+1}-1)^2 * 2^{(r+1)(L-2)}.
    EXPECT_EQ(stage_identity_check(3, 1).cases, 9u * 4);
    EXPECT_THROW(stage_identity_check(4, 1), std::invalid_argument);
}

TEST(StageIdentityTest, ExhaustiveRadiusTwoThreeBlocks) {
    const auto rep = stage_identity_check(3, 2);
    EXPECT_EQ(rep.cases, 7u * 7 * 8);
    EXPECT_TRUE(rep.holds());
}

} // namespace
} // namespace qsca
