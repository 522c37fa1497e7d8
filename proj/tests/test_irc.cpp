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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "generators.hpp"

using namespace ircgain;

TEST_CASE("user_channel_set validation") {
    user_channel_set ucs;
    ucs.h = complex_vector{cplx(1, 0)};
    ucs.p = complex_matrix(1, 1, {cplx(0.5, 0)});
    ucs.sigma2 = 0.0;
    CHECK_THROWS_AS(irc_sinr_direct(ucs), invalid_parameter);

    ucs.sigma2 = 0.1;
    ucs.p = complex_matrix(2, 1, {cplx(0.5, 0), cplx(0, 0)});
    CHECK_THROWS_AS(irc_sinr_direct(ucs), dimension_mismatch);

    ucs.p = complex_matrix(1, 1, {cplx(0.5, 0)});
    ucs.h[0] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(irc_sinr_direct(ucs), non_finite_input);
}

TEST_CASE("matched-filter limit with no interferers") {
    user_channel_set ucs;
    ucs.h = complex_vector{cplx(1, 0)};
    ucs.sigma2 = 0.1;
    CHECK_THAT(irc_sinr_direct(ucs), Catch::Matchers::WithinAbs(10.0, 1e-12));
    CHECK_THAT(irc_sinr_covariance(ucs), Catch::Matchers::WithinAbs(10.0, 1e-12));
}

TEST_CASE("bundled example evaluates to its frozen values") {
    const user_channel_set full = verification_example();
    const user_channel_set base = testgen::truncated(full, 4);

    const double sinr_base = irc_sinr_direct(base);
    const double sinr_full = irc_sinr_direct(full);
    CHECK(testgen::within_rel(sinr_base, testgen::example_sinr_four, 1e-9));
    CHECK(testgen::within_rel(sinr_full, testgen::example_sinr_five, 1e-9));
    CHECK(sinr_full > sinr_base);

    const gain_terms terms = gain_one_antenna(initial_state(base), testgen::row_of(full, 4));
    CHECK(testgen::within_rel(terms.sinr_gain, testgen::example_gain, 1e-9));
    CHECK(std::abs(terms.sinr_gain - (sinr_full - sinr_base)) <= 1e-9);
    CHECK(std::abs(terms.sinr_gain - verification_reference_values().gain) <= 5e-4);

    CHECK(testgen::within_rel(irc_sinr_covariance(base), sinr_base, 1e-9));
    CHECK(testgen::within_rel(irc_sinr_covariance(full), sinr_full, 1e-9));
}

TEST_CASE("extended rebuilds the full example from its truncation") {
    const user_channel_set full = verification_example();
    const user_channel_set rebuilt =
        extended(testgen::truncated(full, 4), testgen::row_of(full, 4));
    CHECK(max_abs_diff(rebuilt.p, full.p) == 0.0);
    for (std::size_t i = 0; i < full.h.size(); ++i) CHECK(rebuilt.h[i] == full.h[i]);
}

TEST_CASE("direct and covariance formulas agree on random instances") {
    rng_stream r(101);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n_r = r.uniform_index(1, 8);
        const std::size_t n_int = r.uniform_index(0, 8);
        const user_channel_set ucs =
            testgen::random_channel_set(r, n_r, n_int, testgen::pick_sigma2(r));
        const double direct = irc_sinr_direct(ucs);
        const double oracle = irc_sinr_covariance(ucs);
        worst = std::max(worst, std::abs(direct - oracle) /
                                    std::max({1.0, direct, oracle}));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("initial_state matches the direct evaluation") {
    SECTION("no interferers") {
        user_channel_set ucs;
        ucs.h = complex_vector{cplx(0.6, 0), cplx(0, 0.8)};
        ucs.sigma2 = 0.1;
        const irc_state st = initial_state(ucs);
        CHECK(st.inv_gram.rows() == 0);
        CHECK(st.cross_proj.empty());
        CHECK(st.n_antennas == 2);
        CHECK_THAT(st.sinr, Catch::Matchers::WithinAbs(10.0, 1e-12));
    }
    SECTION("bundled example baseline") {
        const irc_state st = initial_state(testgen::truncated(verification_example(), 4));
        CHECK(testgen::within_rel(st.sinr, testgen::example_sinr_four, 1e-9));
    }
    SECTION("random instances stay within 1e-12 of the direct formula") {
        rng_stream r(103);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n_r = r.uniform_index(1, 6);
            const std::size_t n_int = r.uniform_index(0, 6);
            const double sigma2 = r.uniform_index(0, 1) == 0 ? 0.1 : 1.0;
            const user_channel_set ucs = testgen::random_channel_set(r, n_r, n_int, sigma2);
            CHECK(testgen::within_rel(initial_state(ucs).sinr, irc_sinr_direct(ucs), 1e-12));
        }
    }
}

TEST_CASE("gain_one_antenna degenerate and error cases") {
    user_channel_set ucs;
    ucs.h = complex_vector{cplx(1, 0)};
    ucs.sigma2 = 0.1;
    const irc_state st = initial_state(ucs);

    antenna_row row;
    row.h_new = cplx(1, 0);
    const gain_terms terms = gain_one_antenna(st, row);
    CHECK(terms.cross_term == cplx(0, 0));
    CHECK(terms.whitened_energy == 0.0);
    CHECK_THAT(terms.sinr_gain, Catch::Matchers::WithinAbs(10.0, 1e-12));

    antenna_row bad;
    bad.h_new = cplx(1, 0);
    bad.rho = complex_vector(2);
    CHECK_THROWS_AS(gain_one_antenna(st, bad), dimension_mismatch);
}

TEST_CASE("gain equals the direct SINR difference") {
    rng_stream r(107);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n_r = r.uniform_index(1, 8);
        const std::size_t n_int = r.uniform_index(0, 7);
        const user_channel_set base =
            testgen::random_channel_set(r, n_r, n_int, testgen::pick_sigma2(r));
        const antenna_row added = testgen::random_antenna_row(r, n_int);

        const gain_terms terms = gain_one_antenna(initial_state(base), added);
        const double diff = irc_sinr_direct(extended(base, added)) - irc_sinr_direct(base);
        worst = std::max(worst, std::abs(terms.sinr_gain - diff));
        CHECK(terms.whitened_energy >= 0.0);
        CHECK(terms.sinr_gain >= 0.0);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("add_antenna with a null antenna changes nothing but the count") {
    const user_channel_set base = testgen::truncated(verification_example(), 4);
    const irc_state st = initial_state(base);
    antenna_row null_row;
    null_row.rho = complex_vector(base.p.cols());
    const irc_state next = add_antenna(st, null_row);
    CHECK(next.n_antennas == st.n_antennas + 1);
    CHECK(next.sinr == st.sinr);
    CHECK(next.signal_energy == st.signal_energy);
    CHECK(max_abs_diff(next.inv_gram, st.inv_gram) == 0.0);
}

TEST_CASE("add_antenna applies exactly the closed-form gain") {
    const user_channel_set full = verification_example();
    const user_channel_set base = testgen::truncated(full, 4);
    const irc_state st = initial_state(base);
    const antenna_row added = testgen::row_of(full, 4);

    const double expected_gain = gain_one_antenna(st, added).sinr_gain;
    const irc_state next = add_antenna(st, added);
    CHECK(next.sinr == st.sinr + expected_gain);
    CHECK(testgen::within_rel(next.sinr, testgen::example_sinr_five, 1e-9));
}

TEST_CASE("incremental chains track the direct recompute") {
    rng_stream r(109);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n_r = r.uniform_index(1, 5);
        const std::size_t n_int = r.uniform_index(0, 6);
        user_channel_set grown =
            testgen::random_channel_set(r, n_r, n_int, testgen::pick_sigma2(r));
        irc_state state = initial_state(grown);
        double previous = state.sinr;
        for (int step = 0; step < 3; ++step) {
            const antenna_row added = testgen::random_antenna_row(r, n_int);
            state = add_antenna(state, added);
            grown = extended(grown, added);
            CHECK(state.sinr >= previous - 1e-12);
            previous = state.sinr;
        }
        CHECK(testgen::within_rel(state.sinr, irc_sinr_direct(grown), 1e-9));

        // The cached quantities must still describe the grown system.
        if (n_int > 0) {
            const complex_vector proj = mat_vec(conj_transpose(grown.p), grown.h);
            for (std::size_t k = 0; k < n_int; ++k)
                CHECK(std::abs(state.cross_proj[k] - proj[k]) < 1e-12);
            const double quad = cdot(state.cross_proj, mat_vec(state.inv_gram, state.cross_proj)).real();
            const double from_cache =
                std::max(0.0, (state.signal_energy - quad) / state.sigma2);
            CHECK(testgen::within_rel(state.sinr, from_cache, 1e-9));
        }
    }
}

TEST_CASE("cumulative_gain telescopes") {
    SECTION("empty sequence") {
        const user_channel_set base = testgen::truncated(verification_example(), 4);
        const irc_state st = initial_state(base);
        const cumulative_gain_result total = cumulative_gain(st, {});
        CHECK(total.gain == 0.0);
        CHECK(total.state.sinr == st.sinr);
        CHECK(total.state.n_antennas == st.n_antennas);
    }
    SECTION("single antenna reproduces the example gain") {
        const user_channel_set full = verification_example();
        const irc_state st = initial_state(testgen::truncated(full, 4));
        const std::vector<antenna_row> rows{testgen::row_of(full, 4)};
        const cumulative_gain_result total =
            cumulative_gain(st, std::span<const antenna_row>(rows));
        CHECK(testgen::within_rel(total.gain, testgen::example_gain, 1e-9));
    }
    SECTION("long random chains") {
        rng_stream r(113);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n_r = r.uniform_index(1, 6);
            const std::size_t n_int = r.uniform_index(0, 7);
            const std::size_t chain = r.uniform_index(0, 12);
            const user_channel_set base =
                testgen::random_channel_set(r, n_r, n_int, testgen::pick_sigma2(r));
            std::vector<antenna_row> rows;
            for (std::size_t i = 0; i < chain; ++i)
                rows.push_back(testgen::random_antenna_row(r, n_int));

            const irc_state st = initial_state(base);
            const cumulative_gain_result total =
                cumulative_gain(st, std::span<const antenna_row>(rows));
            user_channel_set full = base;
            for (const antenna_row &row : rows) full = extended(full, row);
            const double sinr_full = irc_sinr_direct(full);
            CHECK(std::abs(total.gain - (sinr_full - st.sinr)) <=
                  1e-9 * std::max(1.0, sinr_full));
            CHECK(total.state.n_antennas == n_r + chain);
        }
    }
}

TEST_CASE("gain is nonnegative across a broad random sweep") {
    rng_stream r(127);
    double min_gain = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n_r = r.uniform_index(1, 8);
        const std::size_t z = r.uniform_index(1, 8);
        const user_channel_set ucs =
            testgen::random_channel_set(r, n_r, z - 1, testgen::pick_sigma2(r));
        const antenna_row added = testgen::random_antenna_row(r, z - 1);
        min_gain = std::min(min_gain, gain_one_antenna(initial_state(ucs), added).sinr_gain);
    }
    CHECK(min_gain >= -1e-12);
}
