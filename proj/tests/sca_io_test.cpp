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

#include "qsca/sca_io.hpp"

namespace qsca {
namespace {

TEST(ConfigurationIoTest, ParsesOriginAndCells) {
    const auto c = parse_configuration("origin=-3\n0011010\n");
    EXPECT_EQ(c, Configuration::from_string(-1, "1101"));
    EXPECT_EQ(c.origin(), -1);
}

TEST(ConfigurationIoTest, BlankCellLineIsEmpty) {
    EXPECT_TRUE(parse_configuration("origin=5\n").empty());
    EXPECT_TRUE(parse_configuration("origin=5\n0000\n").empty());
}

TEST(ConfigurationIoTest, RoundTrip) {
    const auto c = Configuration::from_string(-7, "100101");
    EXPECT_EQ(format_configuration(c), "origin=-7\n100101\n");
    EXPECT_EQ(parse_configuration(format_configuration(c)), c);
}

TEST(ConfigurationIoTest, ErrorsCarryLineNumbers) {
    EXPECT_THROW(parse_configuration(""), ParseError);
    try {
        parse_configuration("\norigin=x\n101\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    try {
        parse_configuration("origin=0\n10a1\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    try {
        parse_configuration("origin=0\n101\n111\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(DiagramTest, EmptyConfigurationGivesBlankRows) {
    const auto rows = evolve(Rule(1), Configuration{}, 5);
    EXPECT_EQ(ascii_diagram(rows), "\n\n\n\n\n\n");
    EXPECT_EQ(pbm_diagram(rows), "P1\n0 6\n\n\n\n\n\n\n");
}

TEST(DiagramTest, AsciiAndPbmShareTheFrame) {
    const std::vector<Configuration> rows{Configuration::from_string(0, "11"), Configuration::from_string(-2, "101")};
    EXPECT_EQ(ascii_diagram(rows), "..##\n#.#.\n");
    EXPECT_EQ(pbm_diagram(rows), "P1\n4 2\n0011\n1010\n");
}

TEST(DiagramTest, ParticleRowAtPeriodIsShiftedRowZero) {
    const Rule rule(2);
    const Particle p{0, {bits_from_string("110"), bits_from_string("011")}};
    const auto pred = frt_predict(rule, p);
    ASSERT_TRUE(frt_check(rule, p, pred.period).condition_held);
    const auto rows = evolve(rule, render(rule, p), pred.period);
    const auto text = ascii_diagram(rows);
    std::vector<std::string> lines;
    for (std::size_t pos = 0, nl; (nl = text.find('\n', pos)) != std::string::npos; pos = nl + 1) {
        lines.push_back(text.substr(pos, nl - pos));
    }
    ASSERT_EQ(lines.size(), pred.period + 1);
    auto trim = [](const std::string &s) { return s.substr(s.find('#'), s.rfind('#') - s.find('#') + 1); };
    EXPECT_EQ(trim(lines.front()), trim(lines.back()));
    EXPECT_NE(lines.front(), lines.back());
}

TEST(FrtReportIoTest, ListsEveryPredictedTime) {
    const Rule rule(1);
    const Particle p{0, {bits_from_string("11")}};
    const auto rep = frt_check(rule, p, frt_predict(rule, p).period);
    const auto text = format_frt_report(rule, p, rep);
    EXPECT_NE(text.find("l_counts 2 2\n"), std::string::npos);
    EXPECT_NE(text.find("period 4\n"), std::string::npos);
    EXPECT_NE(text.find("m=0 t=2"), std::string::npos);
    EXPECT_NE(text.find("m=1 t=4"), std::string::npos);
}

} // namespace
} // namespace qsca
