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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ircgain/irc.hpp"
#include "ircgain/matrix.hpp"
#include "ircgain/rng.hpp"

namespace ircgain {

/// How the per-link SINR population at one SIR point is reduced to a curve
/// value: one spectral mean over the pooled (UE x iteration) set, or a
/// spectral mean per iteration followed by an arithmetic mean.
enum class sm_aggregation { pooled, per_iteration };

/// Uplink coordinated multi-point scenario: n_cells cells, ues_per_cell
/// single-antenna users each, antennas_per_bs receive antennas per base
/// station. Own-cell channels are drawn at unit norm; cross-cell channels
/// at the squared norm the SIR point dictates.
struct scenario_config {
    std::size_t n_cells = 4;
    std::size_t ues_per_cell = 2;
    std::size_t antennas_per_bs = 4;
    double sigma2 = 0.1;
    std::vector<double> sir_points_db = {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
    std::size_t iterations = 25;
    std::uint64_t seed = 42;
    sm_aggregation aggregation = sm_aggregation::pooled;

    std::size_t n_ues() const { return n_cells * ues_per_cell; }

    void validate() const {
        if (n_cells < 1 || ues_per_cell < 1 || antennas_per_bs < 1)
            throw invalid_parameter("scenario_config: counts must be >= 1");
        if (!(sigma2 > 0.0)) throw invalid_parameter("scenario_config: sigma2 must be > 0");
        if (iterations < 1) throw invalid_parameter("scenario_config: iterations must be >= 1");
        if (sir_points_db.empty())
            throw invalid_parameter("scenario_config: sir_points_db must be nonempty");
        for (double s : sir_points_db)
            if (!std::isfinite(s)) throw non_finite_input("scenario_config: non-finite SIR point");
    }
};

/// One Monte-Carlo draw of every (UE, BS) channel vector. Own-cell vectors
/// have squared norm exactly 1; cross-cell vectors squared norm 1/SIR.
class channel_realization {
  public:
    channel_realization(std::size_t n_cells, std::size_t ues_per_cell, std::size_t antennas_per_bs)
        : n_cells_(n_cells), ues_per_cell_(ues_per_cell), antennas_(antennas_per_bs),
          channels_(n_cells * ues_per_cell * n_cells) {}

    std::size_t n_cells() const { return n_cells_; }
    std::size_t n_ues() const { return n_cells_ * ues_per_cell_; }
    std::size_t antennas_per_bs() const { return antennas_; }

    std::size_t own_bs(std::size_t ue) const {
        require_ue(ue);
        return ue / ues_per_cell_;
    }

    const complex_vector &channel(std::size_t ue, std::size_t bs) const {
        require_ue(ue);
        require_bs(bs);
        return channels_[ue * n_cells_ + bs];
    }

    complex_vector &channel(std::size_t ue, std::size_t bs) {
        require_ue(ue);
        require_bs(bs);
        return channels_[ue * n_cells_ + bs];
    }

  private:
    void require_ue(std::size_t ue) const {
        if (ue >= n_ues()) throw unknown_ue("channel_realization: UE id out of range");
    }
    void require_bs(std::size_t bs) const {
        if (bs >= n_cells_) throw unknown_bs("channel_realization: BS id out of range");
    }

    std::size_t n_cells_;
    std::size_t ues_per_cell_;
    std::size_t antennas_;
    std::vector<complex_vector> channels_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Draws every channel as i.i.d. circularly-symmetric complex Gaussian
/// entries and rescales to the exact target norm. Draw order is fixed
/// (UE-major, then BS ascending), so a given stream always produces the
/// same realization.
inline channel_realization generate_realization(const scenario_config &cfg, double sir_db,
                                                rng_stream &stream) {
    cfg.validate();
    const double cross_norm_sq = db_to_linear(-sir_db);
    channel_realization real(cfg.n_cells, cfg.ues_per_cell, cfg.antennas_per_bs);
    for (std::size_t ue = 0; ue < cfg.n_ues(); ++ue) {
        for (std::size_t bs = 0; bs < cfg.n_cells; ++bs) {
            const double target = (bs == real.own_bs(ue)) ? 1.0 : cross_norm_sq;
            complex_vector v = stream.normal_vector(cfg.antennas_per_bs);
            double energy = norm_sq(v);
            while (energy == 0.0) { // probability zero, but keep the contract exact
                v = stream.normal_vector(cfg.antennas_per_bs);
                energy = norm_sq(v);
            }
            const double scale = std::sqrt(target / energy);
            for (std::size_t a = 0; a < v.size(); ++a) v[a] *= scale;
            real.channel(ue, bs) = v;
        }
    }
    return real;
}

/// All other UEs in ascending id order; this is the canonical interferer
/// column order shared by channel sets and antenna rows.
inline std::vector<std::size_t> interferers_of(const channel_realization &real, std::size_t ue) {
    std::vector<std::size_t> others;
    others.reserve(real.n_ues() - 1);
    for (std::size_t u = 0; u < real.n_ues(); ++u)
        if (u != ue) others.push_back(u);
    return others;
}

/// Stacks the UE's channels over the given base stations into one channel
/// set: h is the vertical stack of its vectors in bs_subset order, and the
/// interferer columns stack every other UE over the same antennas.
inline user_channel_set per_ue_channel_set(const channel_realization &real, std::size_t ue,
                                           std::span<const std::size_t> bs_subset, double sigma2) {
    if (bs_subset.empty()) throw invalid_parameter("per_ue_channel_set: empty bs subset");
    complex_vector h;
    for (std::size_t bs : bs_subset) h = concat(h, real.channel(ue, bs));

    const std::vector<std::size_t> others = interferers_of(real, ue);
    std::vector<complex_vector> cols;
    cols.reserve(others.size());
    for (std::size_t other : others) {
        complex_vector col;
        for (std::size_t bs : bs_subset) col = concat(col, real.channel(other, bs));
        cols.push_back(std::move(col));
    }
    user_channel_set ucs;
    ucs.h = std::move(h);
    ucs.p = from_columns(bs_subset.size() * real.antennas_per_bs(), cols);
    ucs.sigma2 = sigma2;
    return ucs;
}

/// Per-antenna rows for the base stations in bs_list, in list order, each
/// BS contributing its antennas in index order. rho columns follow the
/// canonical interferer order of per_ue_channel_set.
inline std::vector<antenna_row> antenna_rows_over(const channel_realization &real, std::size_t ue,
                                                  std::span<const std::size_t> bs_list) {
    const std::vector<std::size_t> others = interferers_of(real, ue);
    std::vector<antenna_row> rows;
    rows.reserve(bs_list.size() * real.antennas_per_bs());
    for (std::size_t bs : bs_list) {
        for (std::size_t a = 0; a < real.antennas_per_bs(); ++a) {
            antenna_row row;
            row.h_new = real.channel(ue, bs)[a];
            row.rho = complex_vector(others.size());
            for (std::size_t k = 0; k < others.size(); ++k)
                row.rho[k] = real.channel(others[k], bs)[a];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Spectral mean of a set of linear SNRs: the single SNR that, shared by
/// all links, gives the same total spectral efficiency,
///
///   SM = ((1 + SNR_1) ... (1 + SNR_A))^(1/A) - 1
///
/// computed in the log domain for stability.
inline double spectral_mean(std::span<const double> snrs) {
    if (snrs.empty()) throw empty_list("spectral_mean: empty input");
    double acc = 0.0;
    for (double s : snrs) {
        if (!std::isfinite(s)) throw non_finite_input("spectral_mean: non-finite SNR");
        if (s < 0.0) throw negative_snr("spectral_mean: negative SNR");
        acc += std::log1p(s);
    }
    return std::expm1(acc / static_cast<double>(snrs.size()));
}

/// One output record of the SIR sweep, all values in dB.
struct sweep_row {
    double sir_db = 0.0;
    double single_cell_sm_db = 0.0;
    double multi_cell_sim_sm_db = 0.0;
    double multi_cell_theory_sm_db = 0.0;
};

namespace detail {

inline double aggregate_sm(const scenario_config &cfg, const std::vector<double> &pooled) {
    if (cfg.aggregation == sm_aggregation::pooled) return spectral_mean(pooled);
    // Per-iteration alternative: spectral mean within each iteration's UE
    // block, then the arithmetic mean of those (linear domain).
    const std::size_t block = cfg.n_ues();
    double acc = 0.0;
    for (std::size_t i = 0; i < cfg.iterations; ++i) {
        std::span<const double> slice(pooled.data() + i * block, block);
        acc += spectral_mean(slice);
    }
    return acc / static_cast<double>(cfg.iterations);
}

} // namespace detail

/// Runs the Monte-Carlo sweep. For every SIR point, iteration, and UE it
/// evaluates three SINRs over the same realization:
///
///   single  - direct evaluation on the UE's own base station,
///   multi   - direct evaluation on all base stations stacked,
///   theory  - single plus the telescoped closed-form gain over the other
///             base stations' antennas (own BS first, remaining BSs in
///             ascending id order).
///
/// multi and theory agree per realization up to rounding; keeping both
/// columns is the point of the exercise. Iteration i at SIR index j draws
/// from a stream derived from (seed, j, i), so results do not depend on
/// evaluation order.
inline std::vector<sweep_row> run_sweep(const scenario_config &cfg) {
    cfg.validate();
    std::vector<sweep_row> out;
    out.reserve(cfg.sir_points_db.size());
    for (std::size_t j = 0; j < cfg.sir_points_db.size(); ++j) {
        const double sir_db = cfg.sir_points_db[j];
        std::vector<double> singles, multis, theories;
        singles.reserve(cfg.iterations * cfg.n_ues());
        multis.reserve(cfg.iterations * cfg.n_ues());
        theories.reserve(cfg.iterations * cfg.n_ues());

        for (std::size_t i = 0; i < cfg.iterations; ++i) {
            rng_stream stream = rng_stream::derive(cfg.seed, j, i);
            const channel_realization real = generate_realization(cfg, sir_db, stream);
            for (std::size_t ue = 0; ue < cfg.n_ues(); ++ue) {
                const std::size_t own = real.own_bs(ue);
                std::vector<std::size_t> stacked{own};
                std::vector<std::size_t> extra;
                for (std::size_t bs = 0; bs < cfg.n_cells; ++bs)
                    if (bs != own) {
                        stacked.push_back(bs);
                        extra.push_back(bs);
                    }

                const user_channel_set own_set =
                    per_ue_channel_set(real, ue, std::span<const std::size_t>(stacked.data(), 1),
                                       cfg.sigma2);
                const double single = irc_sinr_direct(own_set);

                const user_channel_set all_set =
                    per_ue_channel_set(real, ue, stacked, cfg.sigma2);
                const double multi = irc_sinr_direct(all_set);

                const irc_state start = initial_state(own_set);
                const std::vector<antenna_row> rows = antenna_rows_over(real, ue, extra);
                const cumulative_gain_result gained =
                    cumulative_gain(start, std::span<const antenna_row>(rows));
                const double theory = start.sinr + gained.gain;

                singles.push_back(single);
                multis.push_back(multi);
                theories.push_back(theory);
            }
        }

        sweep_row row;
        row.sir_db = sir_db;
        row.single_cell_sm_db = linear_to_db(detail::aggregate_sm(cfg, singles));
        row.multi_cell_sim_sm_db = linear_to_db(detail::aggregate_sm(cfg, multis));
        row.multi_cell_theory_sm_db = linear_to_db(detail::aggregate_sm(cfg, theories));
        out.push_back(row);
    }
    return out;
}

} // namespace ircgain
