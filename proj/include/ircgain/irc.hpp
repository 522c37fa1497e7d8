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
#include <span>
#include <utility>
#include <vector>

#include "ircgain/linalg.hpp"
#include "ircgain/matrix.hpp"

namespace ircgain {

/// One user's receive-side view: its own channel h over the current
/// antennas, the other users' channels as the columns of p, and the AWGN
/// variance per antenna. p may have zero columns (no interferers).
struct user_channel_set {
    complex_vector h;
    complex_matrix p;
    double sigma2 = 0.0;

    std::size_t n_antennas() const { return h.size(); }
    std::size_t n_interferers() const { return p.cols(); }

    void validate() const {
        if (!(sigma2 > 0.0)) throw invalid_parameter("user_channel_set: sigma2 must be > 0");
        if (!h.all_finite() || !p.all_finite())
            throw non_finite_input("user_channel_set: non-finite channel entry");
        if (p.cols() > 0 && p.rows() != h.size())
            throw dimension_mismatch("user_channel_set: h length must equal interferer row count");
    }
};

/// What one additional antenna observes: the desired user's channel sample
/// h_new and the interferers' samples rho (one per interferer, in the same
/// column order as the matching user_channel_set).
struct antenna_row {
    cplx h_new{0.0, 0.0};
    complex_vector rho;
};

/// Incremental combiner state. Caches the three quantities the closed-form
/// gain needs, so growing the array by one antenna costs O(k^2) in the
/// interferer count k instead of a full recompute.
struct irc_state {
    std::size_t n_antennas = 0;
    complex_matrix inv_gram;   // (sigma2 I + P^H P)^-1, Hermitian positive definite
    complex_vector cross_proj; // P^H h
    double signal_energy = 0.0; // ||h||^2
    double sigma2 = 0.0;
    double sinr = 0.0;

    std::size_t n_interferers() const { return cross_proj.size(); }
};

/// The two scalars behind the closed-form single-antenna gain, plus the
/// gain itself:
///   cross_term       = h^H P A rho^H   (projection overlap with the new row)
///   whitened_energy  = rho A rho^H     (real and nonnegative for PD A)
///   sinr_gain        = |cross_term - conj(h_new)|^2 / (sigma2 (1 + whitened_energy))
/// The squared-magnitude form is used verbatim; it is manifestly
/// nonnegative and stable near cancellation.
struct gain_terms {
    cplx cross_term{0.0, 0.0};
    double whitened_energy = 0.0;
    double sinr_gain = 0.0;
};

/// Output SINR of the interference rejection combiner, evaluated from the
/// channel-side quadratic form:
///
///   SINR = ||h||^2 / sigma2 - h^H P (sigma2 I + P^H P)^-1 P^H h / sigma2
///
/// With no interferers this reduces to the matched-filter SNR ||h||^2 / sigma2.
inline double irc_sinr_direct(const user_channel_set &ucs) {
    ucs.validate();
    const double energy = norm_sq(ucs.h);
    if (ucs.n_interferers() == 0) return energy / ucs.sigma2;
    const complex_vector proj = mat_vec(conj_transpose(ucs.p), ucs.h);
    const complex_vector x = hermitian_solve(regularized_gram(ucs.p, ucs.sigma2), proj);
    const double value = (energy - cdot(proj, x).real()) / ucs.sigma2;
    return std::max(0.0, value);
}

/// Same SINR through the interference-plus-noise covariance,
/// h^H (sigma2 I + P P^H)^-1 h. Algebraically identical to
/// irc_sinr_direct but shares none of its intermediate quantities, which
/// makes it the cross-check of choice.
inline double irc_sinr_covariance(const user_channel_set &ucs) {
    ucs.validate();
    const complex_matrix cov = regularized_outer_gram(ucs.p, ucs.sigma2, ucs.h.size());
    const complex_vector x = hermitian_solve(cov, ucs.h);
    return std::max(0.0, cdot(ucs.h, x).real());
}

/// Builds the incremental state for a channel set.
inline irc_state initial_state(const user_channel_set &ucs) {
    ucs.validate();
    irc_state st;
    st.n_antennas = ucs.h.size();
    st.sigma2 = ucs.sigma2;
    st.signal_energy = norm_sq(ucs.h);
    if (ucs.n_interferers() == 0) {
        st.sinr = st.signal_energy / st.sigma2;
        return st;
    }
    st.inv_gram = hermitian_inverse(regularized_gram(ucs.p, ucs.sigma2));
    st.cross_proj = mat_vec(conj_transpose(ucs.p), ucs.h);
    const double quad = cdot(st.cross_proj, mat_vec(st.inv_gram, st.cross_proj)).real();
    st.sinr = std::max(0.0, (st.signal_energy - quad) / st.sigma2);
    return st;
}

/// Closed-form SINR increase from appending one antenna, without touching
/// the state. Equals the difference of the two direct SINR evaluations.
/// With no interferers both scalars are zero and the gain is the new
/// antenna's matched-filter contribution |h_new|^2 / sigma2.
inline gain_terms gain_one_antenna(const irc_state &state, const antenna_row &antenna) {
    if (antenna.rho.size() != state.n_interferers())
        throw dimension_mismatch("gain_one_antenna: rho length must equal interferer count");
    if (!is_finite(antenna.h_new) || !antenna.rho.all_finite())
        throw non_finite_input("gain_one_antenna: non-finite antenna row");
    gain_terms terms;
    if (state.n_interferers() > 0) {
        const complex_vector v = mat_vec(state.inv_gram, conjugated(antenna.rho)); // A rho^H
        terms.cross_term = cdot(state.cross_proj, v);
        cplx quad{0.0, 0.0}; // rho A rho^H
        for (std::size_t k = 0; k < antenna.rho.size(); ++k) quad += antenna.rho[k] * v[k];
        // Mathematically real for Hermitian inv_gram; anything beyond
        // rounding noise means the state was corrupted.
        if (std::abs(quad.imag()) > 1e-12 * std::max(1.0, std::abs(quad.real())))
            throw error("gain_one_antenna: rho A rho^H has a non-negligible imaginary part");
        terms.whitened_energy = std::max(0.0, quad.real());
    }
    terms.sinr_gain = std::norm(terms.cross_term - std::conj(antenna.h_new)) /
                      (state.sigma2 * (1.0 + terms.whitened_energy));
    return terms;
}

namespace detail {

inline irc_state apply_antenna(const irc_state &state, const antenna_row &antenna,
                               const gain_terms &terms) {
    irc_state next;
    next.n_antennas = state.n_antennas + 1;
    next.sigma2 = state.sigma2;
    next.signal_energy = state.signal_energy + std::norm(antenna.h_new);
    if (state.n_interferers() > 0) {
        next.inv_gram = rank_one_inverse_update(state.inv_gram, antenna.rho);
        next.cross_proj = complex_vector(state.cross_proj.size());
        for (std::size_t k = 0; k < state.cross_proj.size(); ++k)
            next.cross_proj[k] = state.cross_proj[k] + antenna.h_new * std::conj(antenna.rho[k]);
    }
    next.sinr = state.sinr + terms.sinr_gain;
    return next;
}

} // namespace detail

/// Appends one antenna: rank-one update of the cached inverse, cache
/// refresh, and sinr increased by exactly the closed-form gain computed on
/// the pre-update state.
inline irc_state add_antenna(const irc_state &state, const antenna_row &antenna) {
    return detail::apply_antenna(state, antenna, gain_one_antenna(state, antenna));
}

struct cumulative_gain_result {
    double gain = 0.0;
    irc_state state;
};

/// Telescoped gain over a sequence of antennas: the sum of the per-step
/// closed-form gains, together with the final state. The sum equals the
/// direct SINR difference between the final and initial systems.
inline cumulative_gain_result cumulative_gain(irc_state state, std::span<const antenna_row> rows) {
    double total = 0.0;
    for (const antenna_row &antenna : rows) {
        const gain_terms terms = gain_one_antenna(state, antenna);
        total += terms.sinr_gain;
        state = detail::apply_antenna(state, antenna, terms);
    }
    return {total, std::move(state)};
}

/// Convenience: the channel set extended by one antenna row, for direct
/// (non-incremental) evaluation of the same system.
inline user_channel_set extended(const user_channel_set &ucs, const antenna_row &antenna) {
    if (ucs.n_interferers() != antenna.rho.size())
        throw dimension_mismatch("extended: rho length must equal interferer count");
    user_channel_set out;
    out.sigma2 = ucs.sigma2;
    out.h = concat(ucs.h, complex_vector{antenna.h_new});
    if (ucs.n_interferers() > 0) {
        out.p = complex_matrix(ucs.p.rows() + 1, ucs.p.cols());
        for (std::size_t i = 0; i < ucs.p.rows(); ++i)
            for (std::size_t j = 0; j < ucs.p.cols(); ++j) out.p(i, j) = ucs.p(i, j);
        for (std::size_t j = 0; j < ucs.p.cols(); ++j) out.p(ucs.p.rows(), j) = antenna.rho[j];
    }
    return out;
}

} // namespace ircgain
