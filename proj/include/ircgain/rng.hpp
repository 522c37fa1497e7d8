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
#include <cstdint>
#include <numbers>
#include <random>

#include "ircgain/matrix.hpp"

namespace ircgain {

namespace detail {

// SplitMix64 finalizer, used only to derive substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Deterministic random stream. The engine is mt19937_64 (bit-exact by
/// the standard) and the normal variates come from a hand-rolled
/// Box-Muller transform, so a given (seed, labels) tuple yields the same
/// sequence on every platform and stdlib.
class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed) : eng_(seed) {}

    /// Substream addressed by up to three labels, independent of any other
    /// (seed, labels) combination for practical purposes.
    static rng_stream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                             std::uint64_t c = 0) {
        std::uint64_t s = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
        s = detail::mix64(s ^ (a + 0x9e3779b97f4a7c15ULL));
        s = detail::mix64(s ^ (b + 0xd1b54a32d192ed03ULL));
        s = detail::mix64(s ^ (c + 0x8cb92ba72f3d8dd7ULL));
        return rng_stream(s);
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] via rejection-free modulo of a fresh
    /// 53-bit draw; bias is negligible for the small ranges used here.
    std::uint64_t uniform_index(std::uint64_t lo, std::uint64_t hi) {
        return lo + (eng_() >> 11) % (hi - lo + 1);
    }

    /// Standard normal, Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Complex Gaussian with independent standard-normal components. The
    /// component variance is irrelevant to callers that rescale norms.
    cplx normal_cplx() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    complex_vector normal_vector(std::size_t n) {
        complex_vector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = normal_cplx();
        return v;
    }

    complex_matrix normal_matrix(std::size_t rows, std::size_t cols) {
        complex_matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal_cplx();
        return m;
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ircgain
