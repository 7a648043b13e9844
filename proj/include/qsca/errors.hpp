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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qsca {

/// The all-zero window was passed where a nonzero word is required.
class NullWordError : public std::invalid_argument {
  public:
    NullWordError() : std::invalid_argument("null word is outside the domain of f") {}
};

/// A classical step scanned past its safety bound without the moving window
/// emptying. Carries the time index when raised from evolve().
class StepDivergedError : public std::runtime_error {
  public:
    explicit StepDivergedError(std::size_t scanned, std::optional<std::size_t> time_index = std::nullopt)
        : std::runtime_error(make_message(scanned, time_index)), scanned_(scanned), time_index_(time_index) {}

    std::size_t scanned() const { return scanned_; }
    std::optional<std::size_t> time_index() const { return time_index_; }

  private:
    static std::string make_message(std::size_t scanned, std::optional<std::size_t> t) {
        std::string msg = "step diverged after scanning " + std::to_string(scanned) + " sites";
        if (t) {
            msg += " (at time " + std::to_string(*t) + ")";
        }
        return msg;
    }

    std::size_t scanned_;
    std::optional<std::size_t> time_index_;
};

/// A dense realization was requested above the configured size limit.
class DimensionTooLarge : public std::length_error {
  public:
    DimensionTooLarge(std::size_t n_qubits, std::size_t limit)
        : std::length_error("dimension too large: " + std::to_string(n_qubits) + " qubits exceeds limit " +
                            std::to_string(limit)),
          n_qubits_(n_qubits),
          limit_(limit) {}

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t limit() const { return limit_; }

  private:
    std::size_t n_qubits_;
    std::size_t limit_;
};

/// Text input could not be parsed. line() is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

class NotHermitian : public std::invalid_argument {
  public:
    explicit NotHermitian(double residual)
        : std::invalid_argument("matrix is not Hermitian (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

  private:
    double residual_;
};

class NotUnitary : public std::invalid_argument {
  public:
    explicit NotUnitary(double residual)
        : std::invalid_argument("matrix is not unitary (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

  private:
    double residual_;
};

} // namespace qsca
