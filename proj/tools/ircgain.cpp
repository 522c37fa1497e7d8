// SPDX-License-Identifier: Apache-2.0
//
// ircgain - closed-form antenna-gain analysis for interference rejection combiners
// Copyright (C) 2026 ircgain contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Command-line front end: golden-example verification, SIR sweeps with
// CSV/JSON output, a randomized self-test suite, and an incremental-vs-
// recompute micro-benchmark. Diagnostics go to stderr, data to stdout or
// the requested output file. Exit status is 0 iff every check passed.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ircgain/ircgain.hpp>

namespace {

std::string fmt(const char *spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt6(double v) { return fmt("%.6g", v); }
std::string fmt17(double v) { return fmt("%.17g", v); }

// |a - b| <= tol * max(1, |a|, |b|), the relative-with-floor convention
// used throughout the tests.
bool within_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string trimmed(std::string s) {
    const auto not_space = [](unsigned char c) { return std::isspace(c) == 0; };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

template <typename T> T parse_number(const std::string &text, const std::string &what) {
    T value{};
    const char *first = text.data();
    const char *last = first + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ircgain::invalid_parameter(what + ": cannot parse '" + text + "'");
    return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_double_list(const std::string &text, const std::string &what) {
    std::vector<double> values;
    for (const std::string &piece : split(text, ','))
        values.push_back(parse_number<double>(trimmed(piece), what));
    if (values.empty()) throw ircgain::invalid_parameter(what + ": empty list");
    return values;
}

// ---------------------------------------------------------------- config

ircgain::sm_aggregation parse_aggregation(const std::string &value, const std::string &where) {
    if (value == "pooled") return ircgain::sm_aggregation::pooled;
    if (value == "per_iteration") return ircgain::sm_aggregation::per_iteration;
    throw ircgain::invalid_parameter(where + ": aggregation must be 'pooled' or 'per_iteration', got '" +
                                     value + "'");
}

const char *aggregation_name(ircgain::sm_aggregation a) {
    return a == ircgain::sm_aggregation::pooled ? "pooled" : "per_iteration";
}

// Flat key=value format, '#' starts a comment, blank lines ignored.
// Unknown keys are an error naming the key and line.
ircgain::scenario_config load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ircgain::invalid_parameter("cannot open config file '" + path + "'");
    ircgain::scenario_config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ircgain::invalid_parameter(where + ": expected key=value, got '" + line + "'");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key == "n_cells")
            cfg.n_cells = parse_number<std::size_t>(value, where + ": n_cells");
        else if (key == "ues_per_cell")
            cfg.ues_per_cell = parse_number<std::size_t>(value, where + ": ues_per_cell");
        else if (key == "antennas_per_bs")
            cfg.antennas_per_bs = parse_number<std::size_t>(value, where + ": antennas_per_bs");
        else if (key == "sigma2")
            cfg.sigma2 = parse_number<double>(value, where + ": sigma2");
        else if (key == "iterations")
            cfg.iterations = parse_number<std::size_t>(value, where + ": iterations");
        else if (key == "seed")
            cfg.seed = parse_number<std::uint64_t>(value, where + ": seed");
        else if (key == "sir_points_db")
            cfg.sir_points_db = parse_double_list(value, where + ": sir_points_db");
        else if (key == "aggregation")
            cfg.aggregation = parse_aggregation(value, where);
        else
            throw ircgain::invalid_parameter(where + ": unknown key '" + key + "'");
    }
    return cfg;
}

// ---------------------------------------------------- verify-example

// Splits the bundled five-antenna example into the four-antenna baseline
// plus the fifth row as the candidate antenna.
void split_example(const ircgain::user_channel_set &full, ircgain::user_channel_set &base,
                   ircgain::antenna_row &added) {
    const std::size_t n = full.h.size() - 1;
    base.sigma2 = full.sigma2;
    base.h = ircgain::complex_vector(n);
    for (std::size_t i = 0; i < n; ++i) base.h[i] = full.h[i];
    base.p = ircgain::complex_matrix(n, full.p.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < full.p.cols(); ++j) base.p(i, j) = full.p(i, j);
    added.h_new = full.h[n];
    added.rho = ircgain::row(full.p, n);
}

int cmd_verify_example(double expected_gain) {
    const ircgain::user_channel_set full = ircgain::verification_example();
    const ircgain::verification_reference ref = ircgain::verification_reference_values();

    ircgain::user_channel_set base;
    ircgain::antenna_row added;
    split_example(full, base, added);

    const double sinr_base = ircgain::irc_sinr_direct(base);
    const double sinr_full = ircgain::irc_sinr_direct(full);
    const double difference = sinr_full - sinr_base;
    const double gain = ircgain::gain_one_antenna(ircgain::initial_state(base), added).sinr_gain;

    std::printf("%zu-antenna IRC-SINR  : %.4f\n", base.h.size(), sinr_base);
    std::printf("%zu-antenna IRC-SINR  : %.4f\n", full.h.size(), sinr_full);
    std::printf("closed-form gain    : %s\n", fmt6(gain).c_str());
    std::printf("direct difference   : %s\n", fmt6(difference).c_str());

    int failures = 0;
    const auto mismatch = [&failures](const std::string &what, double got, double want, double tol) {
        std::fprintf(stderr, "mismatch: %s is %s, expected %s (off by %s, tolerance %s)\n",
                     what.c_str(), fmt6(got).c_str(), fmt6(want).c_str(),
                     fmt6(std::abs(got - want)).c_str(), fmt6(tol).c_str());
        ++failures;
    };

    if (std::abs(gain - difference) > ref.identity_tolerance)
        mismatch("closed-form gain vs direct difference", gain, difference, ref.identity_tolerance);
    if (std::abs(gain - expected_gain) > ref.value_tolerance)
        mismatch("closed-form gain", gain, expected_gain, ref.value_tolerance);
    const double lo = std::min(sinr_base, sinr_full);
    const double hi = std::max(sinr_base, sinr_full);
    if (std::abs(lo - ref.sinr_low) > ref.value_tolerance)
        mismatch("lower IRC-SINR", lo, ref.sinr_low, ref.value_tolerance);
    if (std::abs(hi - ref.sinr_high) > ref.value_tolerance)
        mismatch("higher IRC-SINR", hi, ref.sinr_high, ref.value_tolerance);

    return failures == 0 ? 0 : 1;
}

// -------------------------------------------------------------- sweep

struct sweep_flags {
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::string sir_list;
    std::uint64_t seed = 42;
    std::size_t iterations = 0;
    bool have_config = false;
    bool have_seed = false;
    bool have_iterations = false;
    bool have_sir_list = false;
};

std::string sweep_csv(const std::vector<ircgain::sweep_row> &rows) {
    std::string out = "sir_db,single_cell_sm_db,multi_cell_sim_sm_db,multi_cell_theory_sm_db\n";
    for (const ircgain::sweep_row &r : rows) {
        out += fmt17(r.sir_db) + ',' + fmt17(r.single_cell_sm_db) + ',' +
               fmt17(r.multi_cell_sim_sm_db) + ',' + fmt17(r.multi_cell_theory_sm_db) + '\n';
    }
    return out;
}

std::string sweep_json(const ircgain::scenario_config &cfg,
                       const std::vector<ircgain::sweep_row> &rows) {
    nlohmann::json j;
    j["config"] = {
        {"n_cells", cfg.n_cells},
        {"ues_per_cell", cfg.ues_per_cell},
        {"antennas_per_bs", cfg.antennas_per_bs},
        {"sigma2", cfg.sigma2},
        {"sir_points_db", cfg.sir_points_db},
        {"iterations", cfg.iterations},
        {"seed", cfg.seed},
        {"aggregation", aggregation_name(cfg.aggregation)},
    };
    nlohmann::json out_rows = nlohmann::json::array();
    for (const ircgain::sweep_row &r : rows)
        out_rows.push_back({{"sir_db", r.sir_db},
                            {"single_cell_sm_db", r.single_cell_sm_db},
                            {"multi_cell_sim_sm_db", r.multi_cell_sim_sm_db},
                            {"multi_cell_theory_sm_db", r.multi_cell_theory_sm_db}});
    j["rows"] = std::move(out_rows);
    return j.dump(2) + "\n";
}

int cmd_sweep(const sweep_flags &flags) {
    ircgain::scenario_config cfg;
    if (flags.have_config) cfg = load_config_file(flags.config_path);
    if (flags.have_seed) cfg.seed = flags.seed;
    if (flags.have_iterations) cfg.iterations = flags.iterations;
    if (flags.have_sir_list) cfg.sir_points_db = parse_double_list(flags.sir_list, "--sir-list");
    if (flags.format != "csv" && flags.format != "json")
        throw ircgain::invalid_parameter("--format must be 'csv' or 'json', got '" + flags.format + "'");
    cfg.validate();

    const std::vector<ircgain::sweep_row> rows = ircgain::run_sweep(cfg);

    int failures = 0;
    for (const ircgain::sweep_row &r : rows) {
        if (std::abs(r.multi_cell_theory_sm_db - r.multi_cell_sim_sm_db) > 1e-6) {
            std::fprintf(stderr,
                         "check failed at sir_db=%s: theory %s vs simulated %s exceeds 1e-6 dB\n",
                         fmt6(r.sir_db).c_str(), fmt17(r.multi_cell_theory_sm_db).c_str(),
                         fmt17(r.multi_cell_sim_sm_db).c_str());
            ++failures;
        }
        if (r.multi_cell_sim_sm_db < r.single_cell_sm_db - 1e-9) {
            std::fprintf(stderr, "check failed at sir_db=%s: multi-cell SM below single-cell SM\n",
                         fmt6(r.sir_db).c_str());
            ++failures;
        }
    }

    const std::string payload =
        flags.format == "csv" ? sweep_csv(rows) : sweep_json(cfg, rows);
    if (flags.output_path.empty()) {
        std::fputs(payload.c_str(), stdout);
    } else {
        std::ofstream out(flags.output_path, std::ios::binary);
        if (!out) throw ircgain::invalid_parameter("cannot open output file '" + flags.output_path + "'");
        out << payload;
        out.flush();
        if (!out) throw ircgain::invalid_parameter("write failed for '" + flags.output_path + "'");
    }
    return failures == 0 ? 0 : 1;
}

// ------------------------------------------------------------ selftest

void dump_vector(std::ostream &os, const char *name, const ircgain::complex_vector &v) {
    os << "  " << name << " = [";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << "(" << fmt17(v[i].real()) << ", " << fmt17(v[i].imag()) << ")";
    }
    os << "]\n";
}

void dump_matrix(std::ostream &os, const char *name, const ircgain::complex_matrix &m) {
    os << "  " << name << " = [" << m.rows() << "x" << m.cols() << "]\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "    ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << "  ";
            os << "(" << fmt17(m(i, j).real()) << ", " << fmt17(m(i, j).imag()) << ")";
        }
        os << "\n";
    }
}

double pick_sigma2(ircgain::rng_stream &r) {
    constexpr double choices[] = {0.01, 0.1, 1.0};
    return choices[r.uniform_index(0, 2)];
}

ircgain::user_channel_set random_channel_set(ircgain::rng_stream &r, std::size_t n_antennas,
                                             std::size_t n_interferers, double sigma2) {
    ircgain::user_channel_set ucs;
    ucs.h = r.normal_vector(n_antennas);
    ucs.p = r.normal_matrix(n_antennas, n_interferers);
    ucs.sigma2 = sigma2;
    return ucs;
}

ircgain::antenna_row random_antenna_row(ircgain::rng_stream &r, std::size_t n_interferers) {
    ircgain::antenna_row row;
    row.h_new = r.normal_cplx();
    row.rho = r.normal_vector(n_interferers);
    return row;
}

struct suite_outcome {
    std::string name;
    std::size_t trials = 0;
    bool passed = true;
    std::string metric;        // e.g. "min gain"
    double worst = 0.0;        // the reported per-suite extreme
    std::size_t failed_trial = 0;
};

struct selftest_context {
    std::uint64_t seed;
    bool verbose = false; // set for replay runs
};

void report_failure(const selftest_context &ctx, const suite_outcome &suite, std::size_t trial,
                    const std::string &detail) {
    std::cerr << "FAIL " << suite.name << " trial " << trial << ": " << detail << "\n";
    std::cerr << "replay: ircgain selftest --seed " << ctx.seed << " --replay " << suite.name << ":"
              << trial << "\n";
}

// Suite indices label the RNG substream; they are a stable contract so a
// replay regenerates the identical instance.
enum : std::uint64_t {
    suite_gain = 0,
    suite_woodbury = 1,
    suite_telescoping = 2,
    suite_covariance = 3,
    suite_greedy = 4,
};

suite_outcome run_gain_suite(const selftest_context &ctx, std::size_t trials,
                             std::optional<std::size_t> only_trial) {
    suite_outcome out{.name = "gain-nonnegative", .metric = "min gain"};
    out.worst = std::numeric_limits<double>::infinity();
    const std::size_t first = only_trial.value_or(0);
    const std::size_t last = only_trial ? *only_trial + 1 : trials;
    for (std::size_t t = first; t < last; ++t) {
        ircgain::rng_stream r = ircgain::rng_stream::derive(ctx.seed, suite_gain, t);
        const std::size_t n_r = r.uniform_index(1, 8);
        const std::size_t z = r.uniform_index(1, 8);
        const double sigma2 = pick_sigma2(r);
        const ircgain::user_channel_set ucs = random_channel_set(r, n_r, z - 1, sigma2);
        const ircgain::antenna_row added = random_antenna_row(r, z - 1);
        const double gain = ircgain::gain_one_antenna(ircgain::initial_state(ucs), added).sinr_gain;
        out.worst = std::min(out.worst, gain);
        ++out.trials;
        if (ctx.verbose) {
            dump_vector(std::cerr, "h", ucs.h);
            dump_matrix(std::cerr, "p", ucs.p);
            std::cerr << "  sigma2 = " << fmt17(ucs.sigma2) << "\n";
            dump_vector(std::cerr, "rho", added.rho);
            std::cerr << "  h_new = (" << fmt17(added.h_new.real()) << ", "
                      << fmt17(added.h_new.imag()) << ")\n";
            std::cerr << "  gain = " << fmt17(gain) << "\n";
        }
        if (gain < -1e-12) {
            out.passed = false;
            out.failed_trial = t;
            report_failure(ctx, out, t, "gain " + fmt17(gain) + " < -1e-12");
            dump_vector(std::cerr, "h", ucs.h);
            dump_matrix(std::cerr, "p", ucs.p);
            std::cerr << "  sigma2 = " << fmt17(ucs.sigma2) << "\n";
            dump_vector(std::cerr, "rho", added.rho);
            break;
        }
    }
    return out;
}

suite_outcome run_woodbury_suite(const selftest_context &ctx, std::size_t trials,
                                 std::optional<std::size_t> only_trial) {
    suite_outcome out{.name = "woodbury-update", .metric = "max |dA|"};
    const std::size_t first = only_trial.value_or(0);
    const std::size_t last = only_trial ? *only_trial + 1 : trials;
    for (std::size_t t = first; t < last; ++t) {
        ircgain::rng_stream r = ircgain::rng_stream::derive(ctx.seed, suite_woodbury, t);
        const std::size_t n = r.uniform_index(1, 8);
        const ircgain::complex_matrix gram =
            ircgain::regularized_gram(r.normal_matrix(n + 1, n), 0.5 + r.uniform());
        const ircgain::complex_vector rho = r.normal_vector(n);
        const ircgain::complex_matrix a = ircgain::hermitian_inverse(gram);
        const ircgain::complex_matrix updated = ircgain::rank_one_inverse_update(a, rho);

        ircgain::complex_matrix extended = gram; // gram + rho^H rho
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                extended(i, j) += std::conj(rho[i]) * rho[j];
        const double err = ircgain::max_abs_diff(updated, ircgain::hermitian_inverse(extended));
        out.worst = std::max(out.worst, err);
        ++out.trials;
        if (ctx.verbose) {
            dump_matrix(std::cerr, "gram", gram);
            dump_vector(std::cerr, "rho", rho);
            std::cerr << "  max |dA| = " << fmt17(err) << "\n";
        }
        if (err > 1e-9) {
            out.passed = false;
            out.failed_trial = t;
            report_failure(ctx, out, t, "update vs direct inverse differs by " + fmt17(err));
            dump_matrix(std::cerr, "gram", gram);
            dump_vector(std::cerr, "rho", rho);
            break;
        }
    }
    return out;
}

suite_outcome run_telescoping_suite(const selftest_context &ctx, std::size_t trials,
                                    std::optional<std::size_t> only_trial) {
    suite_outcome out{.name = "telescoping", .metric = "max scaled error"};
    const std::size_t first = only_trial.value_or(0);
    const std::size_t last = only_trial ? *only_trial + 1 : trials;
    for (std::size_t t = first; t < last; ++t) {
        ircgain::rng_stream r = ircgain::rng_stream::derive(ctx.seed, suite_telescoping, t);
        const std::size_t n_r = r.uniform_index(1, 6);
        const std::size_t n_int = r.uniform_index(0, 7);
        const double sigma2 = pick_sigma2(r);
        const std::size_t chain = r.uniform_index(0, 12);
        const ircgain::user_channel_set base = random_channel_set(r, n_r, n_int, sigma2);
        std::vector<ircgain::antenna_row> rows;
        rows.reserve(chain);
        for (std::size_t i = 0; i < chain; ++i) rows.push_back(random_antenna_row(r, n_int));

        const ircgain::irc_state start = ircgain::initial_state(base);
        const ircgain::cumulative_gain_result total =
            ircgain::cumulative_gain(start, std::span<const ircgain::antenna_row>(rows));
        ircgain::user_channel_set full = base;
        for (const ircgain::antenna_row &row : rows) full = ircgain::extended(full, row);
        const double sinr_full = ircgain::irc_sinr_direct(full);
        const double err = std::abs(total.gain - (sinr_full - start.sinr));
        const double scaled = err / std::max(1.0, sinr_full);
        out.worst = std::max(out.worst, scaled);
        ++out.trials;
        if (ctx.verbose) {
            dump_vector(std::cerr, "h", base.h);
            dump_matrix(std::cerr, "p", base.p);
            std::cerr << "  sigma2 = " << fmt17(base.sigma2) << ", chain = " << chain << "\n";
            std::cerr << "  telescoped = " << fmt17(total.gain)
                      << ", direct difference = " << fmt17(sinr_full - start.sinr) << "\n";
        }
        if (err > 1e-9 * std::max(1.0, sinr_full)) {
            out.passed = false;
            out.failed_trial = t;
            report_failure(ctx, out, t,
                           "telescoped gain " + fmt17(total.gain) + " vs direct difference " +
                               fmt17(sinr_full - start.sinr));
            dump_vector(std::cerr, "h", base.h);
            dump_matrix(std::cerr, "p", base.p);
            std::cerr << "  sigma2 = " << fmt17(base.sigma2) << "\n";
            for (const ircgain::antenna_row &row : rows) {
                std::cerr << "  h_new = (" << fmt17(row.h_new.real()) << ", "
                          << fmt17(row.h_new.imag()) << ")\n";
                dump_vector(std::cerr, "rho", row.rho);
            }
            break;
        }
    }
    return out;
}

suite_outcome run_covariance_suite(const selftest_context &ctx, std::size_t trials,
                                   std::optional<std::size_t> only_trial) {
    suite_outcome out{.name = "covariance-equivalence", .metric = "max rel error"};
    const std::size_t first = only_trial.value_or(0);
    const std::size_t last = only_trial ? *only_trial + 1 : trials;
    for (std::size_t t = first; t < last; ++t) {
        ircgain::rng_stream r = ircgain::rng_stream::derive(ctx.seed, suite_covariance, t);
        const std::size_t n_r = r.uniform_index(1, 8);
        const std::size_t n_int = r.uniform_index(0, 8);
        const ircgain::user_channel_set ucs = random_channel_set(r, n_r, n_int, pick_sigma2(r));
        const double direct = ircgain::irc_sinr_direct(ucs);
        const double oracle = ircgain::irc_sinr_covariance(ucs);
        const double rel = std::abs(direct - oracle) / std::max({1.0, direct, oracle});
        out.worst = std::max(out.worst, rel);
        ++out.trials;
        if (ctx.verbose) {
            dump_vector(std::cerr, "h", ucs.h);
            dump_matrix(std::cerr, "p", ucs.p);
            std::cerr << "  sigma2 = " << fmt17(ucs.sigma2) << "\n";
            std::cerr << "  direct = " << fmt17(direct) << ", covariance = " << fmt17(oracle)
                      << "\n";
        }
        if (!within_rel(direct, oracle, 1e-9)) {
            out.passed = false;
            out.failed_trial = t;
            report_failure(ctx, out, t,
                           "direct " + fmt17(direct) + " vs covariance " + fmt17(oracle));
            dump_vector(std::cerr, "h", ucs.h);
            dump_matrix(std::cerr, "p", ucs.p);
            std::cerr << "  sigma2 = " << fmt17(ucs.sigma2) << "\n";
            break;
        }
    }
    return out;
}

suite_outcome run_greedy_suite(const selftest_context &ctx, std::size_t trials,
                               std::optional<std::size_t> only_trial) {
    suite_outcome out{.name = "greedy-vs-exhaustive", .metric = "max greedy excess"};
    const std::size_t first = only_trial.value_or(0);
    const std::size_t last = only_trial ? *only_trial + 1 : trials;
    for (std::size_t t = first; t < last; ++t) {
        ircgain::rng_stream r = ircgain::rng_stream::derive(ctx.seed, suite_greedy, t);
        const std::size_t n_r = r.uniform_index(1, 4);
        const std::size_t n_int = r.uniform_index(0, 4);
        const double sigma2 = pick_sigma2(r);
        const std::size_t pool_size = r.uniform_index(3, 5);
        const std::size_t k = r.uniform_index(1, std::min<std::size_t>(3, pool_size));
        const ircgain::user_channel_set base = random_channel_set(r, n_r, n_int, sigma2);
        std::vector<ircgain::antenna_row> rows;
        rows.reserve(pool_size);
        for (std::size_t i = 0; i < pool_size; ++i) rows.push_back(random_antenna_row(r, n_int));

        const ircgain::irc_state start = ircgain::initial_state(base);
        ircgain::candidate_pool pool = ircgain::candidate_pool::from_rows(rows);
        const ircgain::greedy_result greedy = ircgain::greedy_select(start, pool, k);

        // Exhaustive oracle over ordered k-tuples, evaluated with the
        // direct formula on the stacked system.
        double best = -1.0;
        std::vector<std::size_t> tuple;
        const auto dfs = [&](const auto &self) -> void {
            if (tuple.size() == k) {
                ircgain::user_channel_set stacked = base;
                for (std::size_t idx : tuple) stacked = ircgain::extended(stacked, rows[idx]);
                best = std::max(best, ircgain::irc_sinr_direct(stacked));
                return;
            }
            for (std::size_t i = 0; i < pool_size; ++i) {
                if (std::find(tuple.begin(), tuple.end(), i) != tuple.end()) continue;
                tuple.push_back(i);
                self(self);
                tuple.pop_back();
            }
        };
        dfs(dfs);

        const double excess = greedy.state.sinr - best;
        out.worst = std::max(out.worst, excess);
        ++out.trials;

        bool bad_pick = false;
        for (const auto &pick : greedy.trace.picks)
            if (pick.sinr_gain < -1e-12) bad_pick = true;

        // Selecting the whole pool must land on the direct stacked value.
        ircgain::candidate_pool full_pool = ircgain::candidate_pool::from_rows(rows);
        const ircgain::greedy_result everything =
            ircgain::greedy_select(start, full_pool, pool_size);
        ircgain::user_channel_set stacked_all = base;
        for (const ircgain::antenna_row &row : rows) stacked_all = ircgain::extended(stacked_all, row);
        const double direct_all = ircgain::irc_sinr_direct(stacked_all);
        const bool full_pool_ok = within_rel(everything.state.sinr, direct_all, 1e-9);

        if (ctx.verbose) {
            std::cerr << "  greedy = " << fmt17(greedy.state.sinr) << ", exhaustive best = "
                      << fmt17(best) << "\n";
            std::cerr << "  full pool = " << fmt17(everything.state.sinr)
                      << ", direct stacked = " << fmt17(direct_all) << "\n";
        }
        if (excess > 1e-9 || bad_pick || !full_pool_ok) {
            out.passed = false;
            out.failed_trial = t;
            std::string what = excess > 1e-9 ? "greedy exceeds exhaustive optimum by " + fmt17(excess)
                               : bad_pick    ? "a greedy pick has negative gain"
                                             : "full-pool selection " + fmt17(everything.state.sinr) +
                                                " vs direct " + fmt17(direct_all);
            report_failure(ctx, out, t, what);
            dump_vector(std::cerr, "h", base.h);
            dump_matrix(std::cerr, "p", base.p);
            std::cerr << "  sigma2 = " << fmt17(base.sigma2) << ", k = " << k << "\n";
            for (const ircgain::antenna_row &row : rows) {
                std::cerr << "  h_new = (" << fmt17(row.h_new.real()) << ", "
                          << fmt17(row.h_new.imag()) << ")\n";
                dump_vector(std::cerr, "rho", row.rho);
            }
            break;
        }
    }
    return out;
}

int cmd_selftest(std::size_t trials, std::uint64_t seed, const std::string &replay) {
    selftest_context ctx{.seed = seed};
    std::optional<std::size_t> only;
    std::string only_suite;
    if (!replay.empty()) {
        const auto colon = replay.find(':');
        if (colon == std::string::npos)
            throw ircgain::invalid_parameter("--replay expects SUITE:TRIAL, got '" + replay + "'");
        only_suite = replay.substr(0, colon);
        only = parse_number<std::size_t>(replay.substr(colon + 1), "--replay trial");
        ctx.verbose = true;
    }

    // The heavier suites run a tenth of the requested trials; the headline
    // nonnegativity property gets the full count.
    const std::size_t heavy = std::max<std::size_t>(1, trials / 10);

    std::vector<suite_outcome> outcomes;
    const auto want = [&](const char *name) { return only_suite.empty() || only_suite == name; };
    if (want("gain-nonnegative")) outcomes.push_back(run_gain_suite(ctx, trials, only));
    if (want("woodbury-update")) outcomes.push_back(run_woodbury_suite(ctx, heavy, only));
    if (want("telescoping")) outcomes.push_back(run_telescoping_suite(ctx, heavy, only));
    if (want("covariance-equivalence")) outcomes.push_back(run_covariance_suite(ctx, heavy, only));
    if (want("greedy-vs-exhaustive")) outcomes.push_back(run_greedy_suite(ctx, heavy, only));
    if (outcomes.empty())
        throw ircgain::invalid_parameter("--replay: unknown suite '" + only_suite + "'");

    bool all_ok = true;
    for (const suite_outcome &o : outcomes) {
        std::printf("%-22s  trials %-6zu  %s %-13s  %s\n", o.name.c_str(), o.trials,
                    o.metric.c_str(), fmt("%.3e", o.worst).c_str(), o.passed ? "ok" : "FAIL");
        all_ok = all_ok && o.passed;
    }
    return all_ok ? 0 : 1;
}

// --------------------------------------------------------------- bench

struct bench_cell {
    std::size_t n_r, z, a;
};

std::vector<bench_cell> parse_grid(const std::string &spec) {
    std::vector<bench_cell> cells;
    for (const std::string &piece : split(spec, ';')) {
        const std::vector<std::string> parts = split(piece, ',');
        if (parts.size() != 3)
            throw ircgain::invalid_parameter("--grid: expected n_r,z,a triples, got '" + piece + "'");
        bench_cell cell;
        cell.n_r = parse_number<std::size_t>(trimmed(parts[0]), "--grid n_r");
        cell.z = parse_number<std::size_t>(trimmed(parts[1]), "--grid z");
        cell.a = parse_number<std::size_t>(trimmed(parts[2]), "--grid a");
        if (cell.n_r < 1 || cell.z < 1)
            throw ircgain::invalid_parameter("--grid: n_r and z must be >= 1");
        cells.push_back(cell);
    }
    if (cells.empty()) throw ircgain::invalid_parameter("--grid: empty grid");
    return cells;
}

int cmd_bench(const std::string &grid_spec) {
    using clock = std::chrono::steady_clock;
    const std::vector<bench_cell> cells = parse_grid(grid_spec);

    std::printf("%-5s %-4s %-4s %-16s %-16s %s\n", "n_r", "z", "a", "incremental_us",
                "recompute_us", "speedup");
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const bench_cell &cell = cells[c];
        ircgain::rng_stream r = ircgain::rng_stream::derive(42, c);
        const ircgain::user_channel_set base = random_channel_set(r, cell.n_r, cell.z - 1, 0.1);
        std::vector<ircgain::antenna_row> rows;
        rows.reserve(cell.a);
        for (std::size_t i = 0; i < cell.a; ++i) rows.push_back(random_antenna_row(r, cell.z - 1));

        // Prefix systems for the recompute path, one per added antenna.
        std::vector<ircgain::user_channel_set> prefixes;
        prefixes.reserve(cell.a);
        ircgain::user_channel_set grown = base;
        for (const ircgain::antenna_row &row : rows) {
            grown = ircgain::extended(grown, row);
            prefixes.push_back(grown);
        }

        const ircgain::irc_state start = ircgain::initial_state(base);
        const ircgain::cumulative_gain_result incr =
            ircgain::cumulative_gain(start, std::span<const ircgain::antenna_row>(rows));
        const double direct_final =
            cell.a == 0 ? start.sinr : ircgain::irc_sinr_direct(prefixes.back());
        if (!within_rel(incr.state.sinr, direct_final, 1e-9)) {
            std::fprintf(stderr,
                         "agreement check failed for n_r=%zu z=%zu a=%zu: incremental %s vs "
                         "recompute %s\n",
                         cell.n_r, cell.z, cell.a, fmt17(incr.state.sinr).c_str(),
                         fmt17(direct_final).c_str());
            return 1;
        }

        constexpr std::size_t repeats = 400;
        double sink = 0.0;

        const auto t0 = clock::now();
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            ircgain::irc_state state = start;
            for (const ircgain::antenna_row &row : rows) state = ircgain::add_antenna(state, row);
            sink += state.sinr;
        }
        const auto t1 = clock::now();
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            double last = start.sinr;
            for (const ircgain::user_channel_set &prefix : prefixes)
                last = ircgain::irc_sinr_direct(prefix);
            sink += last;
        }
        const auto t2 = clock::now();

        const double incremental_us =
            std::chrono::duration<double, std::micro>(t1 - t0).count() / repeats;
        const double recompute_us =
            std::chrono::duration<double, std::micro>(t2 - t1).count() / repeats;
        std::printf("%-5zu %-4zu %-4zu %-16s %-16s %s\n", cell.n_r, cell.z, cell.a,
                    fmt("%.3f", incremental_us).c_str(), fmt("%.3f", recompute_us).c_str(),
                    fmt6(recompute_us / std::max(incremental_us, 1e-9)).c_str());
        if (sink != sink) std::fprintf(stderr, "unreachable\n"); // keep the loops observable
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"interference rejection combiner antenna-gain toolkit"};
    app.require_subcommand(1);

    CLI::App *verify = app.add_subcommand(
        "verify-example", "check the bundled reference example against its recorded values");
    double expected_gain = ircgain::verification_reference_values().gain;
    verify->add_option("--expected-gain", expected_gain,
                       "override the recorded gain (testing hook)");

    CLI::App *sweep = app.add_subcommand("sweep", "run the SIR sweep and emit CSV or JSON");
    sweep_flags sflags;
    CLI::Option *opt_config = sweep->add_option("--config", sflags.config_path, "key=value config file");
    CLI::Option *opt_seed = sweep->add_option("--seed", sflags.seed, "RNG seed (default 42)");
    sweep->add_option("--output", sflags.output_path, "output file (default stdout)");
    sweep->add_option("--format", sflags.format, "csv or json (default csv)");
    CLI::Option *opt_sir = sweep->add_option("--sir-list", sflags.sir_list,
                                             "comma-separated SIR points in dB");
    CLI::Option *opt_iters = sweep->add_option("--iterations", sflags.iterations,
                                               "Monte-Carlo iterations per SIR point");

    CLI::App *selftest = app.add_subcommand("selftest", "run the randomized property suites");
    std::size_t trials = 10000;
    std::uint64_t st_seed = 42;
    std::string replay;
    selftest->add_option("--trials", trials, "trial count for the headline suite (default 10000)");
    selftest->add_option("--seed", st_seed, "RNG seed (default 42)");
    selftest->add_option("--replay", replay, "re-run one trial as SUITE:TRIAL, verbose");

    CLI::App *bench = app.add_subcommand("bench", "time incremental vs recompute SINR evaluation");
    std::string grid = "4,8,12;8,8,12;16,8,12";
    bench->add_option("--grid", grid, "semicolon-separated n_r,z,a triples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify)) return cmd_verify_example(expected_gain);
        if (app.got_subcommand(sweep)) {
            sflags.have_config = opt_config->count() > 0;
            sflags.have_seed = opt_seed->count() > 0;
            sflags.have_sir_list = opt_sir->count() > 0;
            sflags.have_iterations = opt_iters->count() > 0;
            return cmd_sweep(sflags);
        }
        if (app.got_subcommand(selftest)) return cmd_selftest(trials, st_seed, replay);
        if (app.got_subcommand(bench)) return cmd_bench(grid);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
