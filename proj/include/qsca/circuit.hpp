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
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "state_vector.hpp"

namespace qsca {

// Gate operations. All indices are 0-based qubit positions; block operands
// name their first qubit.

struct Not {
    std::size_t qubit = 0;
    bool operator==(const Not &) const = default;
};

struct Cn {
    std::size_t control = 0;
    std::size_t target = 0;
    bool operator==(const Cn &) const = default;
};

struct CollectiveCn {
    std::size_t control_start = 0;
    std::size_t target_start = 0;
    std::size_t len = 0;
    bool operator==(const CollectiveCn &) const = default;
};

struct BlockReset {
    std::size_t start = 0;
    std::size_t len = 0;
    ResetVariant variant = ResetVariant::extended;
    bool operator==(const BlockReset &) const = default;
};

using GateOp = std::variant<Not, Cn, CollectiveCn, BlockReset>;

namespace detail {

inline std::string out_of_range_message(std::size_t last, std::size_t n) {
    return "qubit " + std::to_string(last) + " out of range for " + std::to_string(n) + " qubits";
}

} // namespace detail

/// Throws std::out_of_range / std::invalid_argument if `op` cannot act on
/// n_qubits qubits.
inline void validate_op(const GateOp &op, std::size_t n_qubits) {
    auto in_range = [&](std::size_t q) {
        if (q >= n_qubits) {
            throw std::out_of_range(detail::out_of_range_message(q, n_qubits));
        }
    };
    auto block_in_range = [&](std::size_t start, std::size_t len) {
        if (len == 0) {
            throw std::invalid_argument("block length must be positive");
        }
        in_range(start + len - 1);
    };
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Not>) {
                in_range(g.qubit);
            } else if constexpr (std::is_same_v<T, Cn>) {
                in_range(g.control);
                in_range(g.target);
                if (g.control == g.target) {
                    throw std::invalid_argument("CN control and target must differ");
                }
            } else if constexpr (std::is_same_v<T, CollectiveCn>) {
                block_in_range(g.control_start, g.len);
                block_in_range(g.target_start, g.len);
                if (g.control_start < g.target_start + g.len && g.target_start < g.control_start + g.len) {
                    throw std::invalid_argument("collective CN blocks overlap");
                }
            } else {
                block_in_range(g.start, g.len);
            }
        },
        op);
}

inline bool is_unitary_op(const GateOp &op) { return !std::holds_alternative<BlockReset>(op); }

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits == 0) {
            throw std::invalid_argument("a circuit needs at least one qubit");
        }
    }

    Circuit(std::size_t n_qubits, std::vector<GateOp> ops) : Circuit(n_qubits) {
        for (auto &op : ops) {
            append(std::move(op));
        }
    }

    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<GateOp> &ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }
    bool empty() const { return ops_.empty(); }

    Circuit &append(GateOp op) {
        validate_op(op, n_qubits_);
        ops_.push_back(std::move(op));
        return *this;
    }

    /// Appends `other`'s ops after this circuit's.
    Circuit &then(const Circuit &other) {
        if (other.n_qubits_ != n_qubits_) {
            throw std::invalid_argument("circuits act on different qubit counts");
        }
        ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
        return *this;
    }

    bool is_unitary() const { return std::all_of(ops_.begin(), ops_.end(), is_unitary_op); }

    bool operator==(const Circuit &) const = default;

  private:
    std::size_t n_qubits_;
    std::vector<GateOp> ops_;
};

namespace detail {

/// Image of basis index i under one op, or -1 when the op annihilates it.
/// Every op here maps basis states to basis states (or to zero).
inline std::int64_t map_basis_index(const GateOp &op, std::size_t n, std::size_t i) {
    auto bit = [n](std::size_t q) { return std::size_t{1} << (n - 1 - q); };
    return std::visit(
        [&](const auto &g) -> std::int64_t {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Not>) {
                i ^= bit(g.qubit);
            } else if constexpr (std::is_same_v<T, Cn>) {
                if (i & bit(g.control)) {
                    i ^= bit(g.target);
                }
            } else if constexpr (std::is_same_v<T, CollectiveCn>) {
                for (std::size_t k = 0; k < g.len; ++k) {
                    if (i & bit(g.control_start + k)) {
                        i ^= bit(g.target_start + k);
                    }
                }
            } else {
                const auto shift = static_cast<unsigned>(n - g.start - g.len);
                const std::size_t block_mask = ((std::size_t{1} << g.len) - 1) << shift;
                if (g.variant == ResetVariant::paper_literal && (i & block_mask) == 0) {
                    return -1;
                }
                i &= ~block_mask;
            }
            return static_cast<std::int64_t>(i);
        },
        op);
}

} // namespace detail

/// Pushes sparse (index, amplitude) entries through the circuit. Colliding
/// images are summed; entries that cancel to zero are dropped. The result is
/// sorted by index.
inline SparseEntries apply_circuit_to_entries(const SparseEntries &entries, const Circuit &circuit) {
    const std::size_t n = circuit.n_qubits();
    SparseEntries mapped;
    mapped.reserve(entries.size());
    for (const auto &[i, a] : entries) {
        std::int64_t j = static_cast<std::int64_t>(i);
        for (const auto &op : circuit.ops()) {
            j = detail::map_basis_index(op, n, static_cast<std::size_t>(j));
            if (j < 0) {
                break;
            }
        }
        if (j >= 0) {
            mapped.emplace_back(static_cast<std::size_t>(j), a);
        }
    }
    std::stable_sort(mapped.begin(), mapped.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    SparseEntries out;
    for (const auto &e : mapped) {
        if (!out.empty() && out.back().first == e.first) {
            out.back().second += e.second;
        } else {
            out.push_back(e);
        }
    }
    std::erase_if(out, [](const auto &e) { return e.second == cplx(0.0, 0.0); });
    return out;
}

/// Overwrites the `old_entries` positions of `state` with `new_entries`.
inline void replace_entries(StateVector &state, const SparseEntries &old_entries, const SparseEntries &new_entries) {
    auto amps = state.data();
    for (const auto &e : old_entries) {
        amps[e.first] = 0.0;
    }
    for (const auto &e : new_entries) {
        amps[e.first] = e.second;
    }
}

/// Applies the circuit's ops in listed order. States with few nonzero
/// amplitudes (basis states, small superpositions) are pushed through the
/// circuit entry by entry instead of sweeping the whole vector per gate.
inline StateVector apply_circuit(StateVector state, const Circuit &circuit) {
    if (state.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("state and circuit qubit counts differ");
    }
    const std::size_t n = state.n_qubits();
    auto amps = state.data();

    const std::size_t sparse_limit = amps.size() / 16;
    SparseEntries entries;
    for (std::size_t i = 0; i < amps.size() && entries.size() <= sparse_limit; ++i) {
        if (amps[i] != cplx(0.0, 0.0)) {
            entries.emplace_back(i, amps[i]);
        }
    }
    if (entries.size() <= sparse_limit) {
        replace_entries(state, entries, apply_circuit_to_entries(entries, circuit));
        return state;
    }

    for (const auto &op : circuit.ops()) {
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Not>) {
                    kernels::apply_not(amps, n, g.qubit);
                } else if constexpr (std::is_same_v<T, Cn>) {
                    kernels::apply_cn(amps, n, g.control, g.target);
                } else if constexpr (std::is_same_v<T, CollectiveCn>) {
                    for (std::size_t k = 0; k < g.len; ++k) {
                        kernels::apply_cn(amps, n, g.control_start + k, g.target_start + k);
                    }
                } else {
                    kernels::block_reset(amps, n, g.start, g.len, g.variant);
                }
            },
            op);
    }
    return state;
}

/// Column j is the circuit applied to basis state j.
inline Matrix circuit_matrix(const Circuit &circuit, std::size_t dense_limit = kDenseQubitLimit) {
    check_dense_limit(circuit.n_qubits(), dense_limit);
    const std::size_t dim = std::size_t{1} << circuit.n_qubits();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        auto col = apply_circuit(basis_state_index(circuit.n_qubits(), j), circuit);
        for (std::size_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Gate-list text format
//
//   X <q> | CN <control> <target> | CCN <ctrl_start> <tgt_start> <len>
//   RESET <start> <len> <literal|extended>
//
// Indices are 1-based; '#' starts a comment.
// ---------------------------------------------------------------------------

inline std::string format_op(const GateOp &op) {
    return std::visit(
        [](const auto &g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Not>) {
                return "X " + std::to_string(g.qubit + 1);
            } else if constexpr (std::is_same_v<T, Cn>) {
                return "CN " + std::to_string(g.control + 1) + " " + std::to_string(g.target + 1);
            } else if constexpr (std::is_same_v<T, CollectiveCn>) {
                return "CCN " + std::to_string(g.control_start + 1) + " " + std::to_string(g.target_start + 1) + " " +
                       std::to_string(g.len);
            } else {
                return "RESET " + std::to_string(g.start + 1) + " " + std::to_string(g.len) + " " +
                       (g.variant == ResetVariant::paper_literal ? "literal" : "extended");
            }
        },
        op);
}

inline std::string emit_gatelist(const Circuit &circuit) {
    std::string out;
    for (const auto &op : circuit.ops()) {
        out += format_op(op);
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::size_t max_qubit(const GateOp &op) {
    return std::visit(
        [](const auto &g) -> std::size_t {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Not>) {
                return g.qubit;
            } else if constexpr (std::is_same_v<T, Cn>) {
                return std::max(g.control, g.target);
            } else if constexpr (std::is_same_v<T, CollectiveCn>) {
                return std::max(g.control_start, g.target_start) + g.len - 1;
            } else {
                return g.start + g.len - 1;
            }
        },
        op);
}

} // namespace detail

/// Parses a gate list. Without `n_qubits` the register is sized to the
/// largest qubit referenced.
inline Circuit parse_gatelist(std::string_view text, std::optional<std::size_t> n_qubits = std::nullopt) {
    std::vector<std::pair<std::size_t, GateOp>> ops;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream is{std::string(line)};
        std::vector<std::string> tok;
        for (std::string t; is >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        auto index = [&](std::size_t k) -> std::size_t {
            const auto &t = tok[k];
            if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw ParseError(line_no, "expected a positive integer, got '" + t + "'");
            }
            unsigned long long v = 0;
            try {
                v = std::stoull(t);
            } catch (const std::exception &) {
                throw ParseError(line_no, "integer out of range: '" + t + "'");
            }
            if (v == 0) {
                throw ParseError(line_no, "indices are 1-based");
            }
            return static_cast<std::size_t>(v);
        };
        auto arity = [&](std::size_t n) {
            if (tok.size() != n + 1) {
                throw ParseError(line_no, tok[0] + " takes " + std::to_string(n) + " operand(s)");
            }
        };
        const auto &name = tok[0];
        GateOp op;
        if (name == "X") {
            arity(1);
            op = Not{index(1) - 1};
        } else if (name == "CN") {
            arity(2);
            op = Cn{index(1) - 1, index(2) - 1};
        } else if (name == "CCN") {
            arity(3);
            op = CollectiveCn{index(1) - 1, index(2) - 1, index(3)};
        } else if (name == "RESET") {
            arity(3);
            ResetVariant v;
            if (tok[3] == "literal") {
                v = ResetVariant::paper_literal;
            } else if (tok[3] == "extended") {
                v = ResetVariant::extended;
            } else {
                throw ParseError(line_no, "reset variant must be 'literal' or 'extended'");
            }
            op = BlockReset{index(1) - 1, index(2), v};
        } else {
            throw ParseError(line_no, "unknown gate '" + name + "'");
        }
        ops.emplace_back(line_no, op);
    }

    std::size_t n = n_qubits.value_or(0);
    if (!n_qubits) {
        for (const auto &[ln, op] : ops) {
            n = std::max(n, detail::max_qubit(op) + 1);
        }
        n = std::max<std::size_t>(n, 1);
    }
    Circuit c(n);
    for (auto &[ln, op] : ops) {
        try {
            c.append(op);
        } catch (const std::logic_error &e) {
            throw ParseError(ln, e.what());
        }
    }
    return c;
}

/// Canonical spelling of a gate list: comments and blank lines dropped,
/// single spaces.
inline std::string normalize_gatelist(std::string_view text) { return emit_gatelist(parse_gatelist(text)); }

} // namespace qsca
