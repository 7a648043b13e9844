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
 * Classical radius-r parity filter automaton.
 *
 * A time step scans the lattice left to right. The new value of cell n is
 * computed from the r cells to its left (already updated), cell n itself and
 * the r cells to its right (not yet updated):
 *
 *     a_n(t+1) = 1 xor a_{n-r}(t+1) xor ... xor a_{n-1}(t+1)
 *                  xor a_n(t) xor ... xor a_{n+r}(t)
 *
 * except that the all-zero window maps to 0, so the quiescent background is a
 * fixed point. Particles are runs of (r+1)-cell basic strings; the Fast Rule
 * Theorem predictor lives at the bottom of this file.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace qsca {

using Site = std::int64_t;

class Rule {
  public:
    explicit Rule(int radius) : radius_(radius) {
        if (radius < 1) {
            throw std::invalid_argument("radius must be >= 1");
        }
    }

    int radius() const { return radius_; }
    std::size_t window_length() const { return 2 * static_cast<std::size_t>(radius_) + 1; }
    std::size_t block_length() const { return static_cast<std::size_t>(radius_) + 1; }

    bool operator==(const Rule &) const = default;

  private:
    int radius_;
};

/// The 2r+1 cells feeding one update: r already-updated cells, the cell being
/// updated and r cells still at time t.
struct Window {
    Bits left_updated;
    std::uint8_t center = 0;
    Bits right;

    Bits to_bits() const {
        Bits out = left_updated;
        out.push_back(center);
        out.insert(out.end(), right.begin(), right.end());
        return out;
    }
};

/// Finite-support configuration on the integer lattice. Stored trimmed, so
/// two configurations are equal iff they describe the same cells.
class Configuration {
  public:
    Configuration() = default;

    static Configuration from_bits(Site origin, std::span<const std::uint8_t> bits) {
        auto first = std::find(bits.begin(), bits.end(), std::uint8_t{1});
        if (first == bits.end()) {
            return {};
        }
        auto last = std::find(bits.rbegin(), bits.rend(), std::uint8_t{1}).base();
        Configuration c;
        c.origin_ = origin + static_cast<Site>(first - bits.begin());
        c.bits_.assign(first, last);
        for (auto b : c.bits_) {
            if (b > 1) {
                throw std::invalid_argument("configuration cells must be 0 or 1");
            }
        }
        return c;
    }

    static Configuration from_string(Site origin, std::string_view text) {
        auto bits = bits_from_string(text);
        return from_bits(origin, bits);
    }

    /// Site of the leftmost 1. Zero for the empty configuration.
    Site origin() const { return origin_; }
    const Bits &bits() const { return bits_; }
    bool empty() const { return bits_.empty(); }
    std::size_t width() const { return bits_.size(); }
    Site first_site() const { return origin_; }
    Site last_site() const { return origin_ + static_cast<Site>(bits_.size()) - 1; }

    std::uint8_t at(Site site) const {
        if (site < origin_ || site >= origin_ + static_cast<Site>(bits_.size())) {
            return 0;
        }
        return bits_[static_cast<std::size_t>(site - origin_)];
    }

    Configuration shifted(Site k) const {
        Configuration c = *this;
        if (!c.empty()) {
            c.origin_ += k;
        }
        return c;
    }

    std::size_t count_ones() const { return weight(bits_); }

    bool operator==(const Configuration &) const = default;

  private:
    Site origin_ = 0;
    Bits bits_;
};

inline bool equal_up_to_translation(const Configuration &a, const Configuration &b) { return a.bits() == b.bits(); }

// ---------------------------------------------------------------------------
// Window update
// ---------------------------------------------------------------------------

inline std::uint8_t next_center(const Rule &rule, std::span<const std::uint8_t> window) {
    if (window.size() != rule.window_length()) {
        throw std::invalid_argument("window length must be 2r+1");
    }
    std::uint8_t parity = 0;
    bool any = false;
    for (auto b : window) {
        parity ^= b;
        any = any || b;
    }
    return any ? static_cast<std::uint8_t>(1u ^ parity) : std::uint8_t{0};
}

inline std::uint8_t next_center(const Rule &rule, const Window &window) {
    if (window.left_updated.size() != static_cast<std::size_t>(rule.radius()) ||
        window.right.size() != static_cast<std::size_t>(rule.radius())) {
        throw std::invalid_argument("window sides must hold r cells each");
    }
    auto bits = window.to_bits();
    return next_center(rule, bits);
}

/// f on packed words. The center cell of a (2r+1)-bit word is bit r.
inline Word f_word(const Rule &rule, Word word) {
    const auto r = static_cast<unsigned>(rule.radius());
    const Word mask = (Word{1} << (2 * r + 1)) - 1;
    if ((word & ~mask) != 0) {
        throw std::invalid_argument("word wider than the window");
    }
    if (word == 0) {
        throw NullWordError();
    }
    const Word parity = static_cast<Word>(std::popcount(word) & 1);
    const Word center = Word{1} << r;
    return (word & ~center) | ((1u ^ parity) ? center : 0);
}

/// f on nonzero words: rewrites the center cell only.
inline Bits f_window(const Rule &rule, std::span<const std::uint8_t> word) {
    if (word.size() != rule.window_length()) {
        throw std::invalid_argument("window length must be 2r+1");
    }
    if (is_null(word)) {
        throw NullWordError();
    }
    Bits out(word.begin(), word.end());
    out[static_cast<std::size_t>(rule.radius())] = next_center(rule, word);
    return out;
}

/// The unique word mapped onto the null word: center 1, all side cells 0.
inline Word null_preimage_word(const Rule &rule) { return Word{1} << rule.radius(); }

// ---------------------------------------------------------------------------
// Time evolution
// ---------------------------------------------------------------------------

inline std::size_t default_scan_limit(const Rule &rule, const Configuration &config) {
    return config.width() + 64 * rule.block_length();
}

/// One left-to-right sweep. Scanning starts r sites left of the support and
/// stops once every remaining old cell is 0 and the last r updated cells are
/// 0; `scan_limit` bounds the number of visited sites.
inline Configuration step(const Rule &rule, const Configuration &config,
                          std::optional<std::size_t> scan_limit = std::nullopt) {
    if (config.empty()) {
        return {};
    }
    const auto r = static_cast<Site>(rule.radius());
    const std::size_t limit = scan_limit.value_or(default_scan_limit(rule, config));
    const Site start = config.first_site() - r;
    const Site hi = config.last_site();

    Bits updated; // updated[k] is the new value of site start + k
    updated.reserve(config.width() + 2 * rule.block_length());
    auto updated_at = [&](Site site) -> std::uint8_t {
        if (site < start) {
            return 0;
        }
        return updated[static_cast<std::size_t>(site - start)];
    };

    for (Site n = start;; ++n) {
        bool left_quiet = true;
        std::uint8_t parity = 0;
        bool any = false;
        for (Site i = 1; i <= r; ++i) {
            const auto b = updated_at(n - i);
            parity ^= b;
            any = any || b;
            left_quiet = left_quiet && !b;
        }
        if (n > hi && left_quiet) {
            break;
        }
        if (updated.size() >= limit) {
            throw StepDivergedError(updated.size());
        }
        for (Site j = 0; j <= r; ++j) {
            const auto b = config.at(n + j);
            parity ^= b;
            any = any || b;
        }
        updated.push_back(any ? static_cast<std::uint8_t>(1u ^ parity) : std::uint8_t{0});
    }
    return Configuration::from_bits(start, updated);
}

/// Returns steps+1 configurations; entry 0 is the input.
inline std::vector<Configuration> evolve(const Rule &rule, const Configuration &config, std::size_t steps,
                                         std::optional<std::size_t> scan_limit = std::nullopt) {
    std::vector<Configuration> history;
    history.reserve(steps + 1);
    history.push_back(config);
    for (std::size_t t = 0; t < steps; ++t) {
        try {
            history.push_back(step(rule, history.back(), scan_limit));
        } catch (const StepDivergedError &e) {
            throw StepDivergedError(e.scanned(), t);
        }
    }
    return history;
}

// ---------------------------------------------------------------------------
// Particles
// ---------------------------------------------------------------------------

using BasicString = Bits;

struct Particle {
    Site start_site = 0;
    std::vector<BasicString> blocks;

    std::size_t length() const { return blocks.size(); }

    /// Throws std::invalid_argument unless every block has r+1 cells and the
    /// first and last blocks are nonzero.
    void validate(const Rule &rule) const {
        if (blocks.empty()) {
            throw std::invalid_argument("particle needs at least one block");
        }
        for (const auto &b : blocks) {
            if (b.size() != rule.block_length()) {
                throw std::invalid_argument("basic string length must be r+1");
            }
        }
        if (is_null(blocks.front()) || is_null(blocks.back())) {
            throw std::invalid_argument("first and last basic strings must be nonzero");
        }
    }

    Bits cells() const {
        Bits out;
        for (const auto &b : blocks) {
            out.insert(out.end(), b.begin(), b.end());
        }
        return out;
    }

    bool operator==(const Particle &) const = default;
};

inline Configuration render(const Rule &rule, std::span<const Particle> particles) {
    if (particles.empty()) {
        return {};
    }
    Site lo = particles.front().start_site;
    Site hi = lo;
    for (const auto &p : particles) {
        p.validate(rule);
        lo = std::min(lo, p.start_site);
        hi = std::max(hi, p.start_site + static_cast<Site>(p.cells().size()) - 1);
    }
    Bits cells(static_cast<std::size_t>(hi - lo + 1), 0);
    std::vector<bool> claimed(cells.size(), false);
    for (const auto &p : particles) {
        auto c = p.cells();
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto idx = static_cast<std::size_t>(p.start_site - lo) + i;
            if (claimed[idx]) {
                throw std::invalid_argument("particles overlap");
            }
            claimed[idx] = true;
            cells[idx] = c[i];
        }
    }
    return Configuration::from_bits(lo, cells);
}

inline Configuration render(const Rule &rule, const Particle &particle) {
    return render(rule, std::span<const Particle>(&particle, 1));
}

/// Splits the support into particles. Each particle's block grid starts at its
/// leftmost 1 and the particle ends before the first all-zero block.
inline std::vector<Particle> parse_particles(const Rule &rule, const Configuration &config) {
    std::vector<Particle> out;
    const auto len = static_cast<Site>(rule.block_length());
    Site site = config.first_site();
    const Site hi = config.last_site();
    while (!config.empty() && site <= hi) {
        if (!config.at(site)) {
            ++site;
            continue;
        }
        Particle p;
        p.start_site = site;
        for (Site block_start = site;; block_start += len) {
            BasicString block(static_cast<std::size_t>(len));
            for (Site i = 0; i < len; ++i) {
                block[static_cast<std::size_t>(i)] = config.at(block_start + i);
            }
            if (is_null(block)) {
                site = block_start + len;
                break;
            }
            p.blocks.push_back(std::move(block));
        }
        out.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fast Rule Theorem
// ---------------------------------------------------------------------------

struct FrtPrediction {
    /// l_0..l_L: 1-counts of A^1, A^1^A^2, ..., A^{L-1}^A^L, A^L.
    std::vector<std::size_t> l_counts;
    /// t_m = l_0 + ... + l_m for m = 0..L.
    std::vector<std::size_t> return_times;
    /// Entry m (0 <= m < L) is A^{m+1} ^ (A^{m+2} ... A^L A^0 A^1 ... A^m), with
    /// A^0 the null block. Entry L is the particle itself.
    std::vector<std::vector<BasicString>> predicted_blocks;
    std::size_t period = 0;
};

inline FrtPrediction frt_predict(const Rule &rule, const Particle &particle) {
    particle.validate(rule);
    const std::size_t L = particle.length();
    // a[i] is A^i with a[0] = O.
    std::vector<BasicString> a;
    a.reserve(L + 1);
    a.emplace_back(rule.block_length(), 0);
    a.insert(a.end(), particle.blocks.begin(), particle.blocks.end());

    FrtPrediction pred;
    pred.l_counts.push_back(weight(a[1]));
    for (std::size_t i = 1; i < L; ++i) {
        pred.l_counts.push_back(weight(xor_bits(a[i], a[i + 1])));
    }
    pred.l_counts.push_back(weight(a[L]));
    pred.return_times.resize(L + 1);
    std::partial_sum(pred.l_counts.begin(), pred.l_counts.end(), pred.return_times.begin());

    for (std::size_t m = 0; m < L; ++m) {
        std::vector<BasicString> pattern;
        pattern.reserve(L);
        for (std::size_t k = 1; k <= L; ++k) {
            // Cyclic successors of A^{m+1} on the ring A^0..A^L.
            pattern.push_back(xor_bits(a[m + 1], a[(m + 1 + k) % (L + 1)]));
        }
        pred.predicted_blocks.push_back(std::move(pattern));
    }
    pred.predicted_blocks.push_back(particle.blocks);
    pred.period = pred.return_times.back();
    return pred;
}

struct FrtTimeCheck {
    std::size_t m = 0;
    std::size_t time = 0;
    /// Empty when the non-splitting condition failed before this time.
    std::optional<bool> matched;
    /// Site of the observed leftmost 1 minus the site the predicted pattern's
    /// leftmost 1 would occupy at the particle's original grid.
    std::optional<Site> displacement;
    std::string predicted;
    std::string observed;
};

struct FrtReport {
    FrtPrediction prediction;
    bool condition_held = true;
    /// First time at which the configuration was not a single L-block particle.
    std::optional<std::size_t> violation_time;
    std::vector<FrtTimeCheck> checks;

    bool all_matched() const {
        return condition_held &&
               std::all_of(checks.begin(), checks.end(), [](const FrtTimeCheck &c) { return c.matched.value_or(false); });
    }
    /// True when the state at t_L is the initial particle up to translation.
    bool returned() const { return condition_held && !checks.empty() && checks.back().matched.value_or(false); }
};

namespace detail {

inline std::string trimmed_pattern(const Bits &cells, std::size_t *leading_zeros = nullptr) {
    auto s = to_string(cells);
    auto first = s.find('1');
    if (first == std::string::npos) {
        if (leading_zeros) {
            *leading_zeros = 0;
        }
        return {};
    }
    auto last = s.rfind('1');
    if (leading_zeros) {
        *leading_zeros = first;
    }
    return s.substr(first, last - first + 1);
}

inline bool single_particle_of_length(const Rule &rule, const Configuration &c, std::size_t L) {
    auto parts = parse_particles(rule, c);
    return parts.size() == 1 && parts.front().length() == L;
}

} // namespace detail

/// Evolves the particle alone on the lattice and compares every predicted
/// time against the prediction, up to translation. The non-splitting
/// condition is checked at every step 0..horizon: the configuration must parse
/// as exactly one particle of exactly L blocks.
inline FrtReport frt_check(const Rule &rule, const Particle &particle, std::size_t horizon) {
    FrtReport report;
    report.prediction = frt_predict(rule, particle);
    const auto &pred = report.prediction;
    if (horizon < pred.period) {
        throw std::invalid_argument("horizon must be at least the predicted period");
    }
    const std::size_t L = particle.length();

    std::vector<Configuration> history{render(rule, particle)};
    for (std::size_t t = 0; t <= horizon; ++t) {
        if (!detail::single_particle_of_length(rule, history.back(), L)) {
            report.condition_held = false;
            report.violation_time = t;
            break;
        }
        if (t == horizon) {
            break;
        }
        try {
            history.push_back(step(rule, history.back()));
        } catch (const StepDivergedError &) {
            report.condition_held = false;
            report.violation_time = t + 1;
            break;
        }
    }

    for (std::size_t m = 0; m <= L; ++m) {
        FrtTimeCheck check;
        check.m = m;
        check.time = pred.return_times[m];
        Bits cells;
        for (const auto &b : pred.predicted_blocks[m]) {
            cells.insert(cells.end(), b.begin(), b.end());
        }
        std::size_t lead = 0;
        check.predicted = detail::trimmed_pattern(cells, &lead);
        if (report.condition_held) {
            const auto &obs = history[check.time];
            check.observed = to_string(obs.bits());
            check.matched = check.observed == check.predicted;
            check.displacement = obs.origin() - (particle.start_site + static_cast<Site>(lead));
        }
        report.checks.push_back(std::move(check));
    }
    return report;
}

} // namespace qsca
