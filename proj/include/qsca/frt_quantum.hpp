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
 * Block circuit that propagates a qubit particle |A^1 ... A^L O ... O>.
 *
 * Stage m (blocks 0-based) applies the collective CNs from block m onto
 * blocks m+1, ..., m+L, nearest first, and then resets block m:
 *
 *     (B, C_1, ..., C_L) -> (O, B^C_1, ..., B^C_L)
 *
 * Starting from A^1 ... A^L, the state after s stages is O^s followed by
 * A^{m+1} ^ (A^{m+2} ... A^L A^0 A^1 ... A^m) with m = (s-1) mod (L+1)
 * and A^0 = O. After L+1 stages the particle is back, shifted by L+1 blocks.
 */

#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "sca_core.hpp"

namespace qsca {

struct BlockRegister {
    int radius = 1;
    std::size_t n_blocks = 0;
    StateVector state{1};

    std::size_t block_len() const { return static_cast<std::size_t>(radius) + 1; }
    std::size_t block_start(std::size_t block) const { return block * block_len(); }
};

/// |A^1 ... A^L O^padding>. The radius is read off the block length.
inline BlockRegister make_particle_state(const std::vector<BasicString> &blocks, std::size_t padding) {
    if (blocks.empty() || blocks.front().size() < 2) {
        throw std::invalid_argument("particle blocks must hold r+1 >= 2 cells");
    }
    const Rule rule(static_cast<int>(blocks.front().size()) - 1);
    Particle{0, blocks}.validate(rule);
    if (padding < 1) {
        throw std::invalid_argument("padding must be at least one null block");
    }
    BlockRegister reg;
    reg.radius = rule.radius();
    reg.n_blocks = blocks.size() + padding;
    Bits cells;
    for (const auto &b : blocks) {
        cells.insert(cells.end(), b.begin(), b.end());
    }
    cells.resize(reg.n_blocks * reg.block_len(), 0);
    reg.state = basis_state(cells);
    return reg;
}

/// Ops of stage m on a register of n_blocks blocks.
inline Circuit frt_stage_circuit(int radius, std::size_t n_blocks, std::size_t m, std::size_t L,
                                 ResetVariant variant) {
    const std::size_t len = static_cast<std::size_t>(radius) + 1;
    if (L == 0 || m + L >= n_blocks) {
        throw std::out_of_range("stage " + std::to_string(m) + " with L=" + std::to_string(L) + " needs blocks up to " +
                                std::to_string(m + L) + " but the register has " + std::to_string(n_blocks));
    }
    Circuit c(n_blocks * len);
    for (std::size_t k = 1; k <= L; ++k) {
        c.append(CollectiveCn{m * len, (m + k) * len, len});
    }
    c.append(BlockReset{m * len, len, variant});
    return c;
}

struct FrtStagePlan {
    std::size_t L = 0;
    std::size_t padding = 0;
    std::vector<Circuit> stages;

    Circuit flattened() const {
        Circuit all(stages.front().n_qubits());
        for (const auto &s : stages) {
            all.then(s);
        }
        return all;
    }
};

inline FrtStagePlan make_stage_plan(int radius, std::size_t L, std::size_t padding, ResetVariant variant) {
    if (padding < 1) {
        throw std::invalid_argument("padding must be at least one null block");
    }
    FrtStagePlan plan{L, padding, {}};
    for (std::size_t m = 0; m < padding; ++m) {
        plan.stages.push_back(frt_stage_circuit(radius, L + padding, m, L, variant));
    }
    return plan;
}

inline BlockRegister frt_stage(BlockRegister reg, std::size_t m, std::size_t L, ResetVariant variant) {
    reg.state = apply_circuit(std::move(reg.state), frt_stage_circuit(reg.radius, reg.n_blocks, m, L, variant));
    return reg;
}

/// Blocks predicted after `stage` stages (0 = the input particle).
inline std::vector<BasicString> predicted_stage_blocks(const std::vector<BasicString> &blocks, std::size_t padding,
                                                       std::size_t stage) {
    const std::size_t L = blocks.size();
    const std::size_t len = blocks.front().size();
    std::vector<BasicString> ring; // A^0 .. A^L
    ring.emplace_back(len, 0);
    ring.insert(ring.end(), blocks.begin(), blocks.end());

    std::vector<BasicString> out(stage, BasicString(len, 0));
    if (stage == 0) {
        out.insert(out.end(), blocks.begin(), blocks.end());
    } else {
        const std::size_t m = (stage - 1) % (L + 1);
        for (std::size_t k = 1; k <= L; ++k) {
            out.push_back(xor_bits(ring[(m + 1) % (L + 1)], ring[(m + 1 + k) % (L + 1)]));
        }
    }
    out.resize(L + padding, BasicString(len, 0));
    return out;
}

/// True when the literal reset would meet a null leading block within the
/// first `stages` stages, i.e. some consecutive blocks coincide.
inline bool literal_reset_annihilates(const std::vector<BasicString> &blocks, std::size_t padding,
                                      std::size_t stages) {
    for (std::size_t s = 0; s < stages; ++s) {
        if (is_null(predicted_stage_blocks(blocks, padding, s)[s])) {
            return true;
        }
    }
    return false;
}

inline Bits concat_blocks(const std::vector<BasicString> &blocks) {
    Bits cells;
    for (const auto &b : blocks) {
        cells.insert(cells.end(), b.begin(), b.end());
    }
    return cells;
}

inline StateVector blocks_state(const std::vector<BasicString> &blocks) { return basis_state(concat_blocks(blocks)); }

/// The entries equal |blocks> exactly, or the zero vector when `blocks` is
/// empty.
inline bool entries_equal_blocks(const SparseEntries &entries, const std::vector<BasicString> &blocks) {
    if (blocks.empty()) {
        return entries.empty();
    }
    return entries.size() == 1 && entries.front().first == pack_bits(concat_blocks(blocks)) &&
           entries.front().second == cplx(1.0, 0.0);
}

inline bool state_equals_blocks(const StateVector &state, const std::vector<BasicString> &blocks) {
    return entries_equal_blocks(nonzero_entries(state), blocks);
}

/// Block contents from a register's nonzero entries: "101 O 011" for a unit
/// basis state, "0" for the zero vector, otherwise each component as
/// "(re,im)|blocks>" joined by " + ".
inline std::string describe_entries(const SparseEntries &entries, std::size_t n_blocks, std::size_t block_len) {
    auto blocks_of = [&](std::size_t index) {
        const auto cells = unpack_bits(index, n_blocks * block_len);
        std::string s;
        for (std::size_t b = 0; b < n_blocks; ++b) {
            std::span<const std::uint8_t> blk(cells.data() + b * block_len, block_len);
            s += (b ? " " : "");
            s += is_null(blk) ? std::string("O") : to_string(blk);
        }
        return s;
    };
    if (entries.empty()) {
        return "0";
    }
    if (entries.size() == 1 && entries.front().second == cplx(1.0, 0.0)) {
        return blocks_of(entries.front().first);
    }
    std::string out;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const cplx a = entries[k].second;
        out += (k ? " + " : "");
        out += "(" + format_real(a.real()) + "," + format_real(a.imag()) + ")|" + blocks_of(entries[k].first) + ">";
    }
    return out;
}

inline std::string describe_register(const BlockRegister &reg) {
    return describe_entries(nonzero_entries(reg.state), reg.n_blocks, reg.block_len());
}

struct FrtRunReport {
    int radius = 1;
    std::size_t L = 0;
    std::size_t padding = 0;
    ResetVariant variant = ResetVariant::extended;
    std::vector<BasicString> input_blocks;
    /// describe_register of the input (entry 0) and after each stage.
    std::vector<std::string> stage_descriptions;
    /// Whether the state after stage s equals the closed-form prediction
    /// (the zero vector once a literal reset has met a null block).
    std::vector<bool> stage_matches;
    /// Final state is |O^padding A^1 ... A^L>. This holds exactly when
    /// padding is a multiple of L+1.
    bool final_is_translation = false;
    BlockRegister final_register;

    bool all_stages_match() const {
        return std::all_of(stage_matches.begin(), stage_matches.end(), [](bool b) { return b; });
    }
};

/// Runs stages 0..padding-1 on an arbitrary register state, keeping every
/// intermediate register. Memory grows with padding; run_frt keeps only
/// descriptions.
inline std::vector<BlockRegister> run_frt_register(const BlockRegister &reg, std::size_t L, ResetVariant variant) {
    if (reg.n_blocks <= L) {
        throw std::invalid_argument("register has no padding blocks");
    }
    const std::size_t padding = reg.n_blocks - L;
    std::vector<BlockRegister> states{reg};
    for (std::size_t m = 0; m < padding; ++m) {
        states.push_back(frt_stage(states.back(), m, L, variant));
    }
    return states;
}

inline FrtRunReport run_frt(const std::vector<BasicString> &blocks, std::size_t padding,
                            ResetVariant variant = ResetVariant::extended) {
    auto reg = make_particle_state(blocks, padding);
    FrtRunReport rep;
    rep.radius = reg.radius;
    rep.L = blocks.size();
    rep.padding = padding;
    rep.variant = variant;
    rep.input_blocks = blocks;

    std::vector<BasicString> shifted(padding, BasicString(blocks.front().size(), 0));
    shifted.insert(shifted.end(), blocks.begin(), blocks.end());
    // The register holds a basis state throughout, so the stages are pushed
    // through its nonzero entries and written back after one initial scan.
    auto entries = nonzero_entries(reg.state);
    for (std::size_t s = 0; s <= padding; ++s) {
        if (s > 0) {
            auto next = apply_circuit_to_entries(
                entries, frt_stage_circuit(reg.radius, reg.n_blocks, s - 1, rep.L, variant));
            replace_entries(reg.state, entries, next);
            entries = std::move(next);
        }
        auto expected = predicted_stage_blocks(blocks, padding, s);
        if (variant == ResetVariant::paper_literal && literal_reset_annihilates(blocks, padding, s)) {
            expected.clear();
        }
        rep.stage_matches.push_back(entries_equal_blocks(entries, expected));
        rep.stage_descriptions.push_back(describe_entries(entries, reg.n_blocks, reg.block_len()));
        if (s == padding) {
            rep.final_is_translation = entries_equal_blocks(entries, shifted);
        }
    }
    rep.final_register = std::move(reg);
    return rep;
}

struct StageIdentityReport {
    int radius = 1;
    std::size_t L = 0;
    std::size_t cases = 0;
    /// mismatches[s] counts inputs whose state after stage s differed from
    /// the closed form; s runs over 1..L+1.
    std::vector<std::size_t> mismatches;

    bool holds() const {
        return cases > 0 && std::all_of(mismatches.begin(), mismatches.end(), [](std::size_t m) { return m == 0; });
    }
};

/// Runs the L+1 stage cycle (padding L+1, extended reset) on every valid
/// particle of L blocks at radius r and compares each stage with the closed
/// form. Limited to r <= 2 and L <= 3, where enumeration is cheap.
inline StageIdentityReport stage_identity_check(std::size_t L, int r) {
    if (r < 1 || r > 2 || L < 1 || L > 3) {
        throw std::invalid_argument("stage_identity_check covers r <= 2 and L <= 3");
    }
    StageIdentityReport rep;
    rep.radius = r;
    rep.L = L;
    rep.mismatches.assign(L + 2, 0);
    const std::size_t len = static_cast<std::size_t>(r) + 1;
    const std::size_t per_block = std::size_t{1} << len;
    std::size_t total = 1;
    for (std::size_t k = 0; k < L; ++k) {
        total *= per_block;
    }
    const auto stages = make_stage_plan(r, L, L + 1, ResetVariant::extended).stages;
    std::optional<BlockRegister> reg;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<BasicString> blocks;
        std::size_t c = code;
        for (std::size_t k = 0; k < L; ++k) {
            blocks.push_back(unpack_bits(c % per_block, len));
            c /= per_block;
        }
        if (is_null(blocks.front()) || is_null(blocks.back())) {
            continue;
        }
        ++rep.cases;
        // One register is reused; only the entries a stage touches change.
        Bits cells = concat_blocks(blocks);
        cells.resize(len * (2 * L + 1), 0);
        SparseEntries entries{{static_cast<std::size_t>(pack_bits(cells)), cplx(1.0, 0.0)}};
        if (!reg) {
            reg = make_particle_state(blocks, L + 1);
        } else {
            Particle{0, blocks}.validate(Rule(r));
            replace_entries(reg->state, {}, entries);
        }
        for (std::size_t s = 1; s <= L + 1; ++s) {
            auto next = apply_circuit_to_entries(entries, stages[s - 1]);
            replace_entries(reg->state, entries, next);
            entries = std::move(next);
            if (!entries_equal_blocks(entries, predicted_stage_blocks(blocks, L + 1, s))) {
                ++rep.mismatches[s];
            }
        }
        replace_entries(reg->state, entries, {});
    }
    return rep;
}

/// One line per stage, `stage s: <blocks>`, followed by the translation check.
inline std::string format_frt_run(const FrtRunReport &rep) {
    std::ostringstream os;
    for (std::size_t s = 0; s < rep.stage_descriptions.size(); ++s) {
        os << "stage " << s << ": " << rep.stage_descriptions[s] << '\n';
    }
    os << "translated_by_padding " << (rep.final_is_translation ? "yes" : "no") << '\n';
    return os.str();
}

} // namespace qsca
