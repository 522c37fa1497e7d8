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

TEST_CASE("scenario_config validation") {
    scenario_config cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.n_ues() == 8);

    scenario_config bad = cfg;
    bad.n_cells = 0;
    CHECK_THROWS_AS(bad.validate(), invalid_parameter);
    bad = cfg;
    bad.sigma2 = 0.0;
    CHECK_THROWS_AS(bad.validate(), invalid_parameter);
    bad = cfg;
    bad.iterations = 0;
    CHECK_THROWS_AS(bad.validate(), invalid_parameter);
    bad = cfg;
    bad.sir_points_db.clear();
    CHECK_THROWS_AS(bad.validate(), invalid_parameter);
    bad = cfg;
    bad.sir_points_db = {std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(bad.validate(), non_finite_input);
}

TEST_CASE("generated channels hit their norm targets exactly") {
    scenario_config cfg;
    const double sir_db = GENERATE(0.0, 10.0, -5.0);
    rng_stream stream = rng_stream::derive(cfg.seed, 0, 0);
    const channel_realization real = generate_realization(cfg, sir_db, stream);

    const double cross_target = std::pow(10.0, -sir_db / 10.0);
    for (std::size_t ue = 0; ue < real.n_ues(); ++ue) {
        for (std::size_t bs = 0; bs < cfg.n_cells; ++bs) {
            const double target = bs == real.own_bs(ue) ? 1.0 : cross_target;
            CHECK(std::abs(norm_sq(real.channel(ue, bs)) - target) <= 1e-12);
        }
    }
}

TEST_CASE("realizations are deterministic and index-checked") {
    scenario_config cfg;
    rng_stream s1 = rng_stream::derive(7, 3, 2);
    rng_stream s2 = rng_stream::derive(7, 3, 2);
    const channel_realization a = generate_realization(cfg, 5.0, s1);
    const channel_realization b = generate_realization(cfg, 5.0, s2);
    for (std::size_t ue = 0; ue < a.n_ues(); ++ue)
        for (std::size_t bs = 0; bs < cfg.n_cells; ++bs)
            for (std::size_t i = 0; i < cfg.antennas_per_bs; ++i)
                CHECK(a.channel(ue, bs)[i] == b.channel(ue, bs)[i]);

    CHECK_THROWS_AS(a.channel(a.n_ues(), 0), unknown_ue);
    CHECK_THROWS_AS(a.channel(0, cfg.n_cells), unknown_bs);
    CHECK(a.own_bs(0) == 0);
    CHECK(a.own_bs(cfg.ues_per_cell) == 1);
}

TEST_CASE("per_ue_channel_set stacks antennas and interferers") {
    scenario_config cfg;
    const double sir_db = 10.0;
    rng_stream stream = rng_stream::derive(cfg.seed, 1, 0);
    const channel_realization real = generate_realization(cfg, sir_db, stream);

    const std::size_t ue = 3;
    const std::size_t own = real.own_bs(ue);

    SECTION("own cell only") {
        const std::vector<std::size_t> subset{own};
        const user_channel_set ucs = per_ue_channel_set(real, ue, subset, cfg.sigma2);
        CHECK(ucs.h.size() == 4);
        CHECK(std::abs(norm_sq(ucs.h) - 1.0) <= 1e-12);
        CHECK(ucs.p.cols() == 7);
        CHECK(ucs.p.rows() == 4);
    }

    SECTION("all cells, own first") {
        std::vector<std::size_t> subset{own};
        for (std::size_t bs = 0; bs < cfg.n_cells; ++bs)
            if (bs != own) subset.push_back(bs);
        const user_channel_set ucs = per_ue_channel_set(real, ue, subset, cfg.sigma2);
        CHECK(ucs.h.size() == 16);
        const double sir = std::pow(10.0, sir_db / 10.0);
        CHECK(std::abs(norm_sq(ucs.h) - (1.0 + 3.0 / sir)) <= 1e-9);
        CHECK(ucs.p.cols() == 7);

        // Column order: other UEs ascending, each stacked over the subset.
        std::size_t col = 0;
        for (std::size_t other = 0; other < real.n_ues(); ++other) {
            if (other == ue) continue;
            std::size_t row_at = 0;
            for (std::size_t bs : subset)
                for (std::size_t i = 0; i < cfg.antennas_per_bs; ++i, ++row_at)
                    CHECK(ucs.p(row_at, col) == real.channel(other, bs)[i]);
            ++col;
        }
    }

    SECTION("empty subset rejected") {
        CHECK_THROWS_AS(per_ue_channel_set(real, ue, {}, cfg.sigma2), invalid_parameter);
    }
}

TEST_CASE("antenna_rows_over matches the stacked channel set") {
    scenario_config cfg;
    rng_stream stream = rng_stream::derive(cfg.seed, 2, 4);
    const channel_realization real = generate_realization(cfg, 0.0, stream);
    const std::size_t ue = 5;
    const std::size_t own = real.own_bs(ue);

    std::vector<std::size_t> all{own};
    std::vector<std::size_t> extra;
    for (std::size_t bs = 0; bs < cfg.n_cells; ++bs)
        if (bs != own) {
            all.push_back(bs);
            extra.push_back(bs);
        }

    const user_channel_set own_set =
        per_ue_channel_set(real, ue, std::span<const std::size_t>(all.data(), 1), cfg.sigma2);
    const user_channel_set all_set = per_ue_channel_set(real, ue, all, cfg.sigma2);
    const std::vector<antenna_row> rows = antenna_rows_over(real, ue, extra);
    REQUIRE(rows.size() == 12);

    user_channel_set grown = own_set;
    for (const antenna_row &row : rows) grown = extended(grown, row);
    CHECK(max_abs_diff(grown.p, all_set.p) == 0.0);
    for (std::size_t i = 0; i < all_set.h.size(); ++i) CHECK(grown.h[i] == all_set.h[i]);
}

TEST_CASE("spectral_mean behavior") {
    CHECK_THROWS_AS(spectral_mean({}), empty_list);
    const std::vector<double> negative{0.5, -0.1};
    CHECK_THROWS_AS(spectral_mean(negative), negative_snr);
    const std::vector<double> poisoned{0.5, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(spectral_mean(poisoned), non_finite_input);

    const std::vector<double> zero{0.0};
    CHECK(spectral_mean(zero) == 0.0);

    const std::vector<double> equal{2.5, 2.5, 2.5};
    CHECK(testgen::within_rel(spectral_mean(equal), 2.5, 1e-12));

    const std::vector<double> pair{1.0, 3.0};
    CHECK(std::abs(spectral_mean(pair) - 1.8284271247461903) <= 1e-12);

    rng_stream r(41);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> snrs;
        const std::size_t n = r.uniform_index(1, 16);
        for (std::size_t i = 0; i < n; ++i) snrs.push_back(20.0 * r.uniform());
        const double sm = spectral_mean(snrs);

        double lo = snrs[0], hi = snrs[0], log_sum = 0.0;
        for (double s : snrs) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            log_sum += std::log2(1.0 + s);
        }
        CHECK(sm >= lo - 1e-12);
        CHECK(sm <= hi + 1e-12);
        CHECK(std::abs(log_sum - static_cast<double>(n) * std::log2(1.0 + sm)) <= 1e-12);

        // permutation invariance
        std::vector<double> reversed(snrs.rbegin(), snrs.rend());
        CHECK(testgen::within_rel(spectral_mean(reversed), sm, 1e-12));

        // strict monotonicity in any single input
        std::vector<double> bumped = snrs;
        bumped[r.uniform_index(0, n - 1)] += 0.5;
        CHECK(spectral_mean(bumped) > sm);
    }
}

TEST_CASE("run_sweep reproduces its invariants on a reduced scenario") {
    scenario_config cfg;
    cfg.iterations = 5;
    const std::vector<sweep_row> rows = run_sweep(cfg);
    REQUIRE(rows.size() == cfg.sir_points_db.size());

    for (std::size_t j = 0; j < rows.size(); ++j) {
        CHECK(rows[j].sir_db == cfg.sir_points_db[j]);
        CHECK(std::abs(rows[j].multi_cell_theory_sm_db - rows[j].multi_cell_sim_sm_db) <= 1e-6);
        CHECK(rows[j].multi_cell_sim_sm_db >= rows[j].single_cell_sm_db - 1e-9);
    }

    // The CoMP gain shrinks as the interference weakens.
    const sweep_row &low = rows.front();
    const sweep_row &high = rows.back();
    CHECK(low.multi_cell_sim_sm_db - low.single_cell_sm_db >
          high.multi_cell_sim_sm_db - high.single_cell_sm_db);

    const std::vector<sweep_row> again = run_sweep(cfg);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        CHECK(rows[j].single_cell_sm_db == again[j].single_cell_sm_db);
        CHECK(rows[j].multi_cell_sim_sm_db == again[j].multi_cell_sim_sm_db);
        CHECK(rows[j].multi_cell_theory_sm_db == again[j].multi_cell_theory_sm_db);
    }
}

TEST_CASE("degenerate one-cell one-UE scenario collapses all three curves") {
    scenario_config cfg;
    cfg.n_cells = 1;
    cfg.ues_per_cell = 1;
    cfg.iterations = 3;
    const std::vector<sweep_row> rows = run_sweep(cfg);
    for (const sweep_row &row : rows) {
        CHECK(row.single_cell_sm_db == row.multi_cell_sim_sm_db);
        CHECK(row.single_cell_sm_db == row.multi_cell_theory_sm_db);
    }
}

TEST_CASE("pooled and per-iteration aggregation agree for a single iteration") {
    scenario_config pooled;
    pooled.iterations = 1;
    pooled.sir_points_db = {0.0, 10.0};
    scenario_config per_iter = pooled;
    per_iter.aggregation = sm_aggregation::per_iteration;

    const std::vector<sweep_row> a = run_sweep(pooled);
    const std::vector<sweep_row> b = run_sweep(per_iter);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a[j].single_cell_sm_db == b[j].single_cell_sm_db);
        CHECK(a[j].multi_cell_sim_sm_db == b[j].multi_cell_sim_sm_db);
        CHECK(a[j].multi_cell_theory_sm_db == b[j].multi_cell_theory_sm_db);
    }

    // With several iterations the two aggregations genuinely differ.
    scenario_config pooled_many = pooled;
    pooled_many.iterations = 6;
    scenario_config per_iter_many = per_iter;
    per_iter_many.iterations = 6;
    const std::vector<sweep_row> c = run_sweep(pooled_many);
    const std::vector<sweep_row> d = run_sweep(per_iter_many);
    bool any_difference = false;
    for (std::size_t j = 0; j < c.size(); ++j)
        any_difference = any_difference || c[j].single_cell_sm_db != d[j].single_cell_sm_db;
    CHECK(any_difference);
}

TEST_CASE("per-realization identity between simulation and the closed form") {
    scenario_config cfg;
    const double sir_db = -10.0;
    for (std::size_t i = 0; i < 3; ++i) {
        rng_stream stream = rng_stream::derive(cfg.seed, 0, i);
        const channel_realization real = generate_realization(cfg, sir_db, stream);
        for (std::size_t ue = 0; ue < real.n_ues(); ++ue) {
            const std::size_t own = real.own_bs(ue);
            std::vector<std::size_t> all{own};
            std::vector<std::size_t> extra;
            for (std::size_t bs = 0; bs < cfg.n_cells; ++bs)
                if (bs != own) {
                    all.push_back(bs);
                    extra.push_back(bs);
                }
            const user_channel_set own_set = per_ue_channel_set(
                real, ue, std::span<const std::size_t>(all.data(), 1), cfg.sigma2);
            const user_channel_set all_set = per_ue_channel_set(real, ue, all, cfg.sigma2);

            const double single = irc_sinr_direct(own_set);
            const double multi = irc_sinr_direct(all_set);
            const irc_state start = initial_state(own_set);
            const std::vector<antenna_row> rows = antenna_rows_over(real, ue, extra);
            const cumulative_gain_result gained =
                cumulative_gain(start, std::span<const antenna_row>(rows));

            CHECK(testgen::within_rel(multi, single + gained.gain, 1e-9));
            CHECK(multi >= single - 1e-12);
        }
    }
}

TEST_CASE("dB conversions") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(std::abs(db_to_linear(10.0) - 10.0) <= 1e-12);
    CHECK(std::abs(linear_to_db(100.0) - 20.0) <= 1e-12);
    CHECK(std::abs(linear_to_db(db_to_linear(-7.3)) + 7.3) <= 1e-12);
}
