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

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sca_core.hpp"

namespace qsca {

namespace detail {

inline std::string_view strip(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) {
                lines.emplace_back(text.substr(pos));
            }
            break;
        }
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

} // namespace detail

/// Reads `origin=<int>` followed by a line of 0/1 cells. A missing or blank
/// cell line is the empty configuration.
inline Configuration parse_configuration(std::string_view text) {
    auto lines = detail::split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && detail::strip(lines[i]).empty()) {
        ++i;
    }
    if (i == lines.size()) {
        throw ParseError(0, "missing origin line");
    }
    auto header = detail::strip(lines[i]);
    constexpr std::string_view key = "origin=";
    if (header.substr(0, key.size()) != key) {
        throw ParseError(i + 1, "expected origin=<int>");
    }
    Site origin = 0;
    try {
        std::size_t used = 0;
        std::string num(header.substr(key.size()));
        origin = std::stoll(num, &used);
        if (used != num.size()) {
            throw std::invalid_argument(num);
        }
    } catch (const std::exception &) {
        throw ParseError(i + 1, "origin is not an integer");
    }
    std::string_view cells;
    if (i + 1 < lines.size()) {
        cells = detail::strip(lines[i + 1]);
    }
    for (std::size_t j = i + 2; j < lines.size(); ++j) {
        if (!detail::strip(lines[j]).empty()) {
            throw ParseError(j + 1, "unexpected content after the cell line");
        }
    }
    try {
        return Configuration::from_string(origin, cells);
    } catch (const std::invalid_argument &e) {
        throw ParseError(i + 2, e.what());
    }
}

inline std::string format_configuration(const Configuration &c) {
    return "origin=" + std::to_string(c.origin()) + "\n" + to_string(c.bits()) + "\n";
}

/// Columns shared by every row of a space-time diagram: the union of supports.
struct DiagramFrame {
    Site first = 0;
    std::size_t width = 0;
};

inline DiagramFrame diagram_frame(std::span<const Configuration> rows) {
    bool any = false;
    Site lo = 0;
    Site hi = -1;
    for (const auto &c : rows) {
        if (c.empty()) {
            continue;
        }
        if (!any) {
            lo = c.first_site();
            hi = c.last_site();
            any = true;
        } else {
            lo = std::min(lo, c.first_site());
            hi = std::max(hi, c.last_site());
        }
    }
    if (!any) {
        return {};
    }
    return {lo, static_cast<std::size_t>(hi - lo + 1)};
}

/// One line per time step, '.' for 0 and '#' for 1.
inline std::string ascii_diagram(std::span<const Configuration> rows) {
    const auto frame = diagram_frame(rows);
    std::string out;
    for (const auto &c : rows) {
        for (std::size_t k = 0; k < frame.width; ++k) {
            out.push_back(c.at(frame.first + static_cast<Site>(k)) ? '#' : '.');
        }
        out.push_back('\n');
    }
    return out;
}

/// Plain PBM (P1): header "P1\n<width> <height>\n", then one row of 0/1
/// characters per time step, top row first.
inline std::string pbm_diagram(std::span<const Configuration> rows) {
    const auto frame = diagram_frame(rows);
    std::string out = "P1\n" + std::to_string(frame.width) + " " + std::to_string(rows.size()) + "\n";
    for (const auto &c : rows) {
        for (std::size_t k = 0; k < frame.width; ++k) {
            out.push_back(c.at(frame.first + static_cast<Site>(k)) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

inline std::string format_frt_report(const Rule &rule, const Particle &particle, const FrtReport &report) {
    std::ostringstream os;
    os << "particle start=" << particle.start_site << " L=" << particle.length() << " blocks=";
    for (std::size_t i = 0; i < particle.blocks.size(); ++i) {
        os << (i ? " " : "") << to_string(particle.blocks[i]);
    }
    os << "\n";
    os << "radius " << rule.radius() << "\n";
    os << "l_counts";
    for (auto l : report.prediction.l_counts) {
        os << " " << l;
    }
    os << "\nreturn_times";
    for (auto t : report.prediction.return_times) {
        os << " " << t;
    }
    os << "\nperiod " << report.prediction.period << "\n";
    os << "condition_held " << (report.condition_held ? "true" : "false");
    if (report.violation_time) {
        os << " (violated at t=" << *report.violation_time << ")";
    }
    os << "\n";
    for (const auto &c : report.checks) {
        os << "m=" << c.m << " t=" << c.time << " predicted=" << (c.predicted.empty() ? "-" : c.predicted);
        if (c.matched) {
            os << " observed=" << (c.observed.empty() ? "-" : c.observed) << " shift=" << *c.displacement
               << (*c.matched ? " match" : " MISMATCH");
        } else {
            os << " n/a";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace qsca
