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
#include <bit>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsca {

/// A word of classical cells, leftmost cell first. Each entry is 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// Packed word: the leftmost bit of a width-w word is bit (w-1) of the integer.
using Word = std::uint64_t;

inline Word pack_bits(std::span<const std::uint8_t> bits) {
    if (bits.size() > 63) {
        throw std::length_error("word wider than 63 bits");
    }
    Word w = 0;
    for (auto b : bits) {
        w = (w << 1) | (b & 1u);
    }
    return w;
}

inline Bits unpack_bits(Word word, std::size_t width) {
    Bits out(width);
    for (std::size_t p = 0; p < width; ++p) {
        out[p] = static_cast<std::uint8_t>((word >> (width - 1 - p)) & 1u);
    }
    return out;
}

inline std::size_t weight(std::span<const std::uint8_t> bits) {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

inline bool is_null(std::span<const std::uint8_t> bits) {
    return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; });
}

inline Bits xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("xor of words with different lengths");
    }
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] ^ b[i];
    }
    return out;
}

inline std::string to_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

/// Parses a string of '0'/'1' characters. Throws std::invalid_argument on
/// anything else.
inline Bits bits_from_string(std::string_view text) {
    Bits out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1') {
            out.push_back(static_cast<std::uint8_t>(c - '0'));
        } else {
            throw std::invalid_argument(std::string("invalid bit character '") + c + "'");
        }
    }
    return out;
}

/// Round-trippable decimal rendering (17 significant digits, shortest form
/// for integers).
inline std::string format_real(double x) {
    if (x == 0.0) {
        return "0"; // drops the sign of -0
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace qsca
