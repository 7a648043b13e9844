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
 * `qsca` command-line front end. run_cli takes its streams as arguments so the
 * tests can drive it in-process.
 *
 * Exit codes: 0 success, 1 usage / I/O / parse error or unsupported radius,
 * 2 domain error (divergence, dimension limits), 3 a verification failed.
 */

#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "check_suite.hpp"
#include "circuit.hpp"
#include "frt_quantum.hpp"
#include "quantize.hpp"
#include "random.hpp"
#include "sca_core.hpp"
#include "sca_io.hpp"
#include "spin_chain.hpp"
#include "unitary_compile.hpp"

namespace qsca {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitCheckFailed = 3;

/// Everything one invocation asked for.
struct RunSpec {
    std::string subcommand;
    std::optional<int> radius;
    std::uint64_t seed = 0;
    std::optional<std::string> out_path;
    std::optional<std::string> format;

    std::string config_file;
    std::size_t steps = 10;
    std::string uf_action;
    std::optional<std::size_t> site;
    std::optional<std::size_t> qubits;
    std::optional<std::size_t> total_sites;
    std::size_t sites = 4;
    std::string variant = "verified";
    bool report = false;
    std::optional<std::size_t> horizon;
    std::string blocks_file;
    std::optional<std::size_t> padding;
    std::string reset = "extended";
    std::optional<std::size_t> dim;
    std::size_t count = 1;
};

namespace cli_detail {

/// Thrown for problems that map to exit 1 but carry no library error type.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline int radius_or(const RunSpec &spec, int fallback) {
    const int r = spec.radius.value_or(fallback);
    if (r < 1) {
        throw UsageError("radius must be at least 1");
    }
    return r;
}

inline std::string format_or(const RunSpec &spec, std::string fallback, std::initializer_list<const char *> allowed) {
    const std::string f = spec.format.value_or(fallback);
    for (const char *a : allowed) {
        if (f == a) {
            return f;
        }
    }
    throw UsageError("format '" + f + "' is not supported by " + spec.subcommand);
}

inline GeneratorVariant parse_variant(const std::string &v) {
    if (v == "verified") {
        return GeneratorVariant::verified;
    }
    if (v == "literal" || v == "paper_literal") {
        return GeneratorVariant::paper_literal;
    }
    throw UsageError("unknown generator variant '" + v + "'");
}

inline ResetVariant parse_reset(const std::string &v) {
    if (v == "extended") {
        return ResetVariant::extended;
    }
    if (v == "literal" || v == "paper_literal") {
        return ResetVariant::paper_literal;
    }
    throw UsageError("unknown reset variant '" + v + "'");
}

/// Blocks file: basic strings separated by whitespace or newlines, `#`
/// comments. All blocks share one length r+1.
inline std::vector<BasicString> parse_blocks(std::string_view text) {
    std::vector<BasicString> blocks;
    std::size_t line_no = 0;
    for (const auto &line : detail::split_lines(text)) {
        ++line_no;
        std::istringstream ls(line.substr(0, line.find('#')));
        std::string tok;
        while (ls >> tok) {
            if (tok.find_first_not_of("01") != std::string::npos) {
                throw ParseError(line_no, "block '" + tok + "' is not a 0/1 string");
            }
            if (!blocks.empty() && tok.size() != blocks.front().size()) {
                throw ParseError(line_no, "blocks must all have the same length");
            }
            blocks.push_back(bits_from_string(tok));
        }
    }
    if (blocks.empty()) {
        throw ParseError(line_no, "no blocks found");
    }
    return blocks;
}

// --- subcommands: each writes to `out` and returns an exit code -------------

inline int cmd_evolve(const RunSpec &spec, std::ostream &out) {
    const Rule rule(radius_or(spec, 1));
    const auto fmt = format_or(spec, "ascii", {"ascii", "pbm"});
    const auto config = parse_configuration(read_file(spec.config_file));
    const auto rows = evolve(rule, config, spec.steps);
    out << (fmt == "ascii" ? ascii_diagram(rows) : pbm_diagram(rows));
    return kExitOk;
}

inline int cmd_uf(const RunSpec &spec, std::ostream &out) {
    const int r = radius_or(spec, 1);
    check_transition_radius(r);
    const auto t = build_uf_matrix(r);
    if (spec.uf_action == "export") {
        const auto fmt = format_or(spec, "triplets", {"triplets", "csv"});
        out << (fmt == "triplets" ? format_triplets(t.matrix) : format_dense_csv(t.dense()));
        return kExitOk;
    }
    if (spec.uf_action == "check") {
        const auto rep = check_partial_isometry(t);
        out << "radius " << r << " dimension " << t.dimension() << '\n';
        out << "residuals " << format_real(rep.range_residual) << ' ' << format_real(rep.domain_residual) << '\n';
        out << "initial_projector_residual " << format_real(rep.initial_projector_residual) << '\n';
        out << "annihilates_null " << (rep.annihilates_null ? "yes" : "no") << '\n';
        return rep.holds() ? kExitOk : kExitCheckFailed;
    }
    // blockform
    const auto part = partition_basis(r);
    const auto blocked = represent_blocked(t, part);
    const auto rep = check_block_form(blocked, part.invariant_words.size());
    out << "radius " << r << " split " << part.invariant_words.size() << '+' << part.flipped_words.size() << '\n';
    out << "order";
    for (Word w : part.order()) {
        out << ' ' << to_string(unpack_bits(w, t.n_qubits()));
    }
    out << '\n';
    if (t.dimension() <= 64) {
        const Matrix d = Matrix(blocked);
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
            for (Eigen::Index j = 0; j < d.cols(); ++j) {
                out << (j ? " " : "") << static_cast<int>(std::lround(d(i, j).real()));
            }
            out << '\n';
        }
    } else {
        out << format_triplets(blocked);
    }
    out << "identity_block " << (rep.identity_block ? "yes" : "no") << '\n';
    out << "antidiagonal_block " << (rep.antidiagonal_block ? "yes" : "no") << '\n';
    out << "off_blocks_zero " << (rep.off_blocks_zero ? "yes" : "no") << '\n';
    return rep.holds() ? kExitOk : kExitCheckFailed;
}

inline int cmd_circuit(const RunSpec &spec, std::ostream &out) {
    const int r = radius_or(spec, 1);
    if (spec.total_sites) {
        if (spec.site || spec.qubits) {
            throw UsageError("--total cannot be combined with --site/--qubits");
        }
        out << emit_gatelist(total_step_circuit(r, *spec.total_sites));
        return kExitOk;
    }
    // Defaults: the interior site of a single window. --site is 1-based.
    const std::size_t n = spec.qubits.value_or(2 * static_cast<std::size_t>(r) + 1);
    const std::size_t site = spec.site.value_or(static_cast<std::size_t>(r) + 1);
    if (site < 1 || site > n) {
        throw UsageError("--site must lie in 1.." + std::to_string(n));
    }
    out << emit_gatelist(build_uf_circuit(r, site - 1, n));
    return kExitOk;
}

inline int cmd_hamiltonian(const RunSpec &spec, std::ostream &out) {
    const int r = radius_or(spec, 1);
    const auto variant = parse_variant(spec.variant);
    const auto h = build_chain_hamiltonian(spec.sites, r, variant);
    out << format_terms(h);
    if (!spec.report) {
        return kExitOk;
    }
    out << "hermiticity_residual " << format_real(hermiticity_residual(to_dense(h))) << '\n';
    if (spec.sites <= kEvolutionComparisonSites) {
        const auto cmp = compare_total_evolution(spec.sites, r, variant);
        out << "exp_sum_vs_product " << format_real(cmp.sum_vs_product) << '\n';
        out << "product_vs_circuit " << format_real(cmp.product_vs_circuit) << '\n';
        out << "exp_sum_vs_circuit " << format_real(cmp.sum_vs_circuit) << '\n';
    } else {
        out << "evolution comparison skipped (more than " << kEvolutionComparisonSites << " sites)\n";
    }
    return kExitOk;
}

inline int cmd_frt_classical(const RunSpec &spec, std::ostream &out) {
    const Rule rule(radius_or(spec, 1));
    const auto config = parse_configuration(read_file(spec.config_file));
    const auto particles = parse_particles(rule, config);
    if (particles.size() != 1) {
        throw UsageError("configuration holds " + std::to_string(particles.size()) +
                         " particles; frt-classical needs exactly one");
    }
    const auto &p = particles.front();
    const auto horizon = spec.horizon.value_or(frt_predict(rule, p).period);
    const auto rep = frt_check(rule, p, horizon);
    out << format_frt_report(rule, p, rep);
    // A broken detector is outside the theorem, not a failure.
    return !rep.condition_held || rep.all_matched() ? kExitOk : kExitCheckFailed;
}

inline int cmd_frt_quantum(const RunSpec &spec, std::ostream &out) {
    const auto blocks = parse_blocks(read_file(spec.blocks_file));
    const int r = static_cast<int>(blocks.front().size()) - 1;
    if (spec.radius && *spec.radius != r) {
        throw UsageError("blocks have length " + std::to_string(blocks.front().size()) + " but --radius is " +
                         std::to_string(*spec.radius));
    }
    const std::size_t padding = spec.padding.value_or(blocks.size() + 1);
    const auto rep = run_frt(blocks, padding, parse_reset(spec.reset));
    out << "radius " << rep.radius << " L " << rep.L << " padding " << rep.padding << " reset "
        << (rep.variant == ResetVariant::extended ? "extended" : "literal") << '\n';
    out << format_frt_run(rep);
    out << "stages_match_prediction " << (rep.all_stages_match() ? "yes" : "no") << '\n';
    return rep.all_stages_match() ? kExitOk : kExitCheckFailed;
}

inline int cmd_parallelism(const RunSpec &spec, std::ostream &out) {
    const int r = radius_or(spec, 2);
    check_transition_radius(r);
    const auto rep = parallelism_demo(r);
    out << "radius " << r << " qubits " << rep.n_qubits << '\n';
    out << "input_terms " << rep.input_terms << '\n';
    out << "operator_applications " << rep.operator_applications << '\n';
    out << "image_words " << rep.support.size() << '\n';
    out << "missing_word " << to_string(unpack_bits(rep.missing_word, rep.n_qubits)) << '\n';
    out << "amplitude 1/sqrt(" << rep.input_terms << ") = " << format_real(rep.expected_amplitude) << '\n';
    out << "max_amplitude_error " << format_real(rep.max_amplitude_error) << '\n';
    out << "norm " << format_real(rep.norm) << '\n';
    const bool ok = rep.support_matches && rep.max_amplitude_error <= 1e-12 && std::abs(rep.norm - 1.0) <= 1e-12;
    out << "support_is_all_but_missing_word " << (rep.support_matches ? "yes" : "no") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

inline int cmd_reck(const RunSpec &spec, std::ostream &out) {
    constexpr double kTol = 1e-9;
    if (!spec.dim) {
        // Plan for the single-window circuit unitary at --radius.
        const int r = radius_or(spec, 1);
        const Matrix u = circuit_matrix(build_window_circuit(r), 10);
        const auto plan = reck_decompose(u);
        out << format_plan(plan);
        const double err = max_abs(reck_reconstruct(plan) - u);
        return err <= kTol ? kExitOk : kExitCheckFailed;
    }
    if (*spec.dim < 1 || *spec.dim > 256) {
        throw UsageError("--dim must lie in 1..256");
    }
    Rng rng(spec.seed);
    bool ok = true;
    for (std::size_t k = 0; k < spec.count; ++k) {
        const Matrix u = random_unitary(*spec.dim, rng);
        const auto plan = reck_decompose(u);
        const double err = max_abs(reck_reconstruct(plan) - u);
        ok = ok && err <= kTol;
        out << "unitary " << (k + 1) << " dim " << *spec.dim << " rotations " << plan.rotations.size()
            << " reconstruction_error " << detail::sci(err) << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

inline int cmd_check(const RunSpec &spec, std::ostream &out) {
    const auto results = run_invariant_suite(spec.seed);
    out << "seed " << spec.seed << '\n' << format_check_results(results);
    for (const auto &r : results) {
        if (!r.passed) {
            return kExitCheckFailed;
        }
    }
    return kExitOk;
}

inline int dispatch(const RunSpec &spec, std::ostream &out) {
    const auto &s = spec.subcommand;
    if (s == "evolve") return cmd_evolve(spec, out);
    if (s == "uf") return cmd_uf(spec, out);
    if (s == "circuit") return cmd_circuit(spec, out);
    if (s == "hamiltonian") return cmd_hamiltonian(spec, out);
    if (s == "frt-classical") return cmd_frt_classical(spec, out);
    if (s == "frt-quantum") return cmd_frt_quantum(spec, out);
    if (s == "parallelism") return cmd_parallelism(spec, out);
    if (s == "reck") return cmd_reck(spec, out);
    if (s == "check") return cmd_check(spec, out);
    throw UsageError("unknown subcommand '" + s + "'");
}

} // namespace cli_detail

/// Parses argv into `spec`; returns an exit code if parsing already decided
/// the outcome (help, usage errors).
inline std::optional<int> parse_run_spec(int argc, const char *const *argv, RunSpec &spec, std::ostream &out,
                                         std::ostream &err) {
    CLI::App app{"Quantized soliton cellular automata lab", "qsca"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--radius,-r", spec.radius, "neighbourhood radius r");
    app.add_option("--seed", spec.seed, "seed for randomized checks");
    app.add_option("--out,-o", spec.out_path, "write the result to this file");
    app.add_option("--format", spec.format, "output format selector");

    auto *evolve = app.add_subcommand("evolve", "space-time diagram of a configuration");
    evolve->add_option("--config", spec.config_file, "configuration file")->required();
    evolve->add_option("--steps", spec.steps, "number of steps");

    auto *uf = app.add_subcommand("uf", "transition operator of f");
    uf->add_option("action", spec.uf_action, "export | check | blockform")
        ->required()
        ->check(CLI::IsMember({"export", "check", "blockform"}));

    auto *circuit = app.add_subcommand("circuit", "gate list for one site or the total step");
    circuit->add_option("--site", spec.site, "updated site, 1-based");
    circuit->add_option("--qubits", spec.qubits, "register size");
    circuit->add_option("--total", spec.total_sites, "total step over this many sites");

    auto *ham = app.add_subcommand("hamiltonian", "Pauli terms of the chain Hamiltonian");
    ham->add_option("--sites", spec.sites, "number of sites");
    ham->add_option("--variant", spec.variant, "verified | literal");
    ham->add_flag("--report", spec.report, "Hermiticity and evolution distances");

    auto *frtc = app.add_subcommand("frt-classical", "check the fast rule predictions for a particle");
    frtc->add_option("--config", spec.config_file, "configuration holding one particle")->required();
    frtc->add_option("--horizon", spec.horizon, "steps to simulate (default: the period)");

    auto *frtq = app.add_subcommand("frt-quantum", "run the block circuit on a particle state");
    frtq->add_option("--blocks", spec.blocks_file, "blocks file")->required();
    frtq->add_option("--padding", spec.padding, "null blocks appended (default L+1)");
    frtq->add_option("--reset", spec.reset, "extended | literal");

    app.add_subcommand("parallelism", "apply U_f once to the nonzero-word superposition");

    auto *reck = app.add_subcommand("reck", "triangular decomposition into 2x2 rotations");
    reck->add_option("--dim", spec.dim, "random unitary dimension (omit for the window circuit)");
    reck->add_option("--count", spec.count, "number of random unitaries");

    app.add_subcommand("check", "run the invariant suite");

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) {
            args.emplace_back(argv[i]);
        }
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "qsca: " << e.what() << '\n';
        return kExitUsage;
    }
    spec.subcommand = app.get_subcommands().front()->get_name();
    return std::nullopt;
}

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunSpec spec;
    if (auto code = parse_run_spec(argc, argv, spec, out, err)) {
        return *code;
    }
    std::ostringstream buffer;
    int code = kExitOk;
    try {
        code = cli_detail::dispatch(spec, buffer);
    } catch (const StepDivergedError &e) {
        err << "qsca: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DimensionTooLarge &e) {
        err << "qsca: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NotUnitary &e) {
        err << "qsca: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NotHermitian &e) {
        err << "qsca: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception &e) {
        // Parse errors, bad arguments, unsupported radius, unreadable files.
        err << "qsca: " << e.what() << '\n';
        return kExitUsage;
    }
    if (spec.out_path) {
        std::ofstream f(*spec.out_path, std::ios::binary);
        if (!(f << buffer.str())) {
            err << "qsca: cannot write '" << *spec.out_path << "'\n";
            return kExitUsage;
        }
    } else {
        out << buffer.str();
    }
    return code;
}

} // namespace qsca
