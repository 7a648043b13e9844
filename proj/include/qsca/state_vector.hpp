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
 * Dense state vectors over n qubits and the in-place gate kernels.
 *
 * Qubit 0 is the most significant bit of the amplitude index, so the basis
 * state of the word x_0 x_1 ... x_{n-1} sits at index sum x_q 2^{n-1-q}.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "operator.hpp"

namespace qsca {

inline constexpr std::size_t kMaxStateQubits = 24;

enum class ResetVariant {
    /// Sums |O><x| over nonzero x only; the null block is annihilated.
    paper_literal,
    /// Sums over every x, so the null block is kept.
    extended,
};

class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
        check_size(n_qubits);
        amplitudes_.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
    }

    StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        check_size(n_qubits);
        if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
            throw std::invalid_argument("amplitude count must be 2^n_qubits");
        }
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }

    const std::vector<cplx> &amplitudes() const { return amplitudes_; }
    std::span<cplx> data() { return amplitudes_; }
    std::span<const cplx> data() const { return amplitudes_; }

    cplx operator[](std::size_t index) const { return amplitudes_.at(index); }
    cplx &operator[](std::size_t index) { return amplitudes_.at(index); }

    /// Index bit belonging to qubit q.
    std::size_t mask(std::size_t q) const {
        check_qubit(q);
        return std::size_t{1} << (n_qubits_ - 1 - q);
    }

    void check_qubit(std::size_t q) const {
        if (q >= n_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                    std::to_string(n_qubits_) + " qubits");
        }
    }

    double norm() const {
        // Compensated sum; 2^20 equal terms drift by ~1e-11 otherwise.
        double s = 0.0;
        double c = 0.0;
        for (const auto &a : amplitudes_) {
            const double y = std::norm(a) - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return std::sqrt(s);
    }

    cplx inner(const StateVector &other) const {
        same_shape(other);
        cplx s(0.0, 0.0);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
        }
        return s;
    }

    double max_abs_diff(const StateVector &other) const {
        same_shape(other);
        double best = 0.0;
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            best = std::max(best, std::abs(amplitudes_[i] - other.amplitudes_[i]));
        }
        return best;
    }

    StateVector &operator+=(const StateVector &other) {
        same_shape(other);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            amplitudes_[i] += other.amplitudes_[i];
        }
        return *this;
    }

    StateVector &operator*=(cplx s) {
        for (auto &a : amplitudes_) {
            a *= s;
        }
        return *this;
    }

    friend StateVector operator+(StateVector a, const StateVector &b) { return a += b; }
    friend StateVector operator*(cplx s, StateVector a) { return a *= s; }

    bool operator==(const StateVector &) const = default;

  private:
    static void check_size(std::size_t n) {
        if (n == 0) {
            throw std::invalid_argument("a state needs at least one qubit");
        }
        if (n > kMaxStateQubits) {
            throw DimensionTooLarge(n, kMaxStateQubits);
        }
    }

    void same_shape(const StateVector &other) const {
        if (other.n_qubits_ != n_qubits_) {
            throw std::invalid_argument("states have different qubit counts");
        }
    }

    std::size_t n_qubits_;
    std::vector<cplx> amplitudes_;
};

// ---------------------------------------------------------------------------
// In-place kernels. Callers validate indices.
// ---------------------------------------------------------------------------

namespace kernels {

/// Inserts a zero at bit position `pos` of k.
inline std::size_t insert_zero(std::size_t k, unsigned pos) {
    const std::size_t low = k & ((std::size_t{1} << pos) - 1);
    return ((k >> pos) << (pos + 1)) | low;
}

inline void apply_not(std::span<cplx> amps, std::size_t n_qubits, std::size_t q) {
    const auto pos = static_cast<unsigned>(n_qubits - 1 - q);
    const std::size_t bit = std::size_t{1} << pos;
    const std::size_t half = amps.size() >> 1;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i = insert_zero(k, pos);
        std::swap(amps[i], amps[i | bit]);
    }
}

inline void apply_cn(std::span<cplx> amps, std::size_t n_qubits, std::size_t control, std::size_t target) {
    const auto pc = static_cast<unsigned>(n_qubits - 1 - control);
    const auto pt = static_cast<unsigned>(n_qubits - 1 - target);
    const auto lo = std::min(pc, pt);
    const auto hi = std::max(pc, pt);
    const std::size_t cbit = std::size_t{1} << pc;
    const std::size_t tbit = std::size_t{1} << pt;
    const std::size_t quarter = amps.size() >> 2;
    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t i = insert_zero(insert_zero(k, lo), hi) | cbit;
        std::swap(amps[i], amps[i | tbit]);
    }
}

/// Moves the weight of every block value onto the null block value (the
/// literal variant drops the null block's own amplitude). In place.
inline void block_reset(std::span<cplx> amps, std::size_t n_qubits, std::size_t block_start, std::size_t block_len,
                        ResetVariant variant) {
    const auto shift = static_cast<unsigned>(n_qubits - block_start - block_len);
    const std::size_t block_mask = ((std::size_t{1} << block_len) - 1) << shift;
    const std::size_t values = std::size_t{1} << block_len;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & block_mask) {
            continue;
        }
        cplx sum = variant == ResetVariant::extended ? amps[i] : cplx(0.0, 0.0);
        for (std::size_t b = 1; b < values; ++b) {
            const std::size_t j = i | (b << shift);
            sum += amps[j];
            amps[j] = 0.0;
        }
        amps[i] = sum;
    }
}

} // namespace kernels

// ---------------------------------------------------------------------------
// Value-returning operations
// ---------------------------------------------------------------------------

/// Computational basis state of the word; the first bit is the most
/// significant index bit.
inline StateVector basis_state(std::span<const std::uint8_t> bits) {
    if (bits.empty()) {
        throw std::invalid_argument("basis_state needs at least one bit");
    }
    StateVector s(bits.size());
    std::size_t index = 0;
    for (auto b : bits) {
        index = (index << 1) | (b & 1u);
    }
    s[index] = 1.0;
    return s;
}

inline StateVector basis_state_index(std::size_t n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    s[index] = 1.0;
    return s;
}

inline StateVector apply_not(StateVector state, std::size_t q) {
    state.check_qubit(q);
    kernels::apply_not(state.data(), state.n_qubits(), q);
    return state;
}

inline void check_cn(const StateVector &state, std::size_t control, std::size_t target) {
    state.check_qubit(control);
    state.check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("CN control and target must differ");
    }
}

inline StateVector apply_cn(StateVector state, std::size_t control, std::size_t target) {
    check_cn(state, control, target);
    kernels::apply_cn(state.data(), state.n_qubits(), control, target);
    return state;
}

inline void check_block(const StateVector &state, std::size_t start, std::size_t len) {
    if (len == 0) {
        throw std::invalid_argument("block length must be positive");
    }
    if (start + len > state.n_qubits()) {
        throw std::out_of_range("block [" + std::to_string(start) + ", " + std::to_string(start + len) +
                                ") out of range for " + std::to_string(state.n_qubits()) + " qubits");
    }
}

inline void check_collective_cn(const StateVector &state, std::size_t control_start, std::size_t target_start,
                                std::size_t len) {
    check_block(state, control_start, len);
    check_block(state, target_start, len);
    if (control_start < target_start + len && target_start < control_start + len) {
        throw std::invalid_argument("collective CN blocks overlap");
    }
}

/// Qubit-wise CN from each qubit of the control block onto the matching
/// qubit of the target block: |X>|Y> -> |X>|X xor Y>.
inline StateVector apply_collective_cn(StateVector state, std::size_t control_start, std::size_t target_start,
                                       std::size_t len) {
    check_collective_cn(state, control_start, target_start, len);
    for (std::size_t k = 0; k < len; ++k) {
        kernels::apply_cn(state.data(), state.n_qubits(), control_start + k, target_start + k);
    }
    return state;
}

inline StateVector apply_block_reset(StateVector state, std::size_t start, std::size_t len, ResetVariant variant) {
    check_block(state, start, len);
    kernels::block_reset(state.data(), state.n_qubits(), start, len, variant);
    return state;
}

/// Equal positive amplitude 1/sqrt(2^n - 1) on every nonzero basis word.
inline StateVector uniform_superposition_nonnull(std::size_t n_qubits) {
    StateVector s(n_qubits);
    const double amp = 1.0 / std::sqrt(static_cast<double>(s.dimension() - 1));
    for (std::size_t i = 1; i < s.dimension(); ++i) {
        s[i] = amp;
    }
    return s;
}

using SparseEntries = std::vector<std::pair<std::size_t, cplx>>;

/// Nonzero amplitudes as (index, amplitude), ascending index.
inline SparseEntries nonzero_entries(const StateVector &s) {
    SparseEntries out;
    const auto amps = s.data();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (amps[i] != cplx(0.0, 0.0)) {
            out.emplace_back(i, amps[i]);
        }
    }
    return out;
}

/// `index re im` for every nonzero amplitude, ascending index (0-based).
inline std::string format_state(const StateVector &s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const cplx a = s[i];
        if (a != cplx(0.0, 0.0)) {
            os << i << ' ' << format_real(a.real()) << ' ' << format_real(a.imag()) << '\n';
        }
    }
    return os.str();
}

} // namespace qsca
