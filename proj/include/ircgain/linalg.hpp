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

#include "ircgain/matrix.hpp"

namespace ircgain {

// Max elementwise |M - M^H| accepted by the Hermitian solvers.
inline constexpr double hermitian_tolerance = 1e-10;

// Guard for the Woodbury denominator |1 + rho A rho^H|. Cannot trip for a
// positive definite A, but the update accepts any Hermitian input.
inline constexpr double denominator_tolerance = 1e-14;

inline double hermitian_defect(const complex_matrix &m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

inline void require_hermitian(const complex_matrix &m) {
    if (m.rows() != m.cols()) throw dimension_mismatch("matrix is not square");
    if (hermitian_defect(m) > hermitian_tolerance)
        throw not_hermitian("matrix exceeds the Hermitian symmetry tolerance");
}

/// (M + M^H) / 2. Makes the Hermitian invariant exact; applied after every
/// inverse so long incremental chains cannot drift.
inline complex_matrix symmetrized(const complex_matrix &m) {
    complex_matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

/// Lower-triangular L with L L^H = M. Throws not_positive_definite on a
/// nonpositive pivot. The caller is expected to have checked symmetry.
inline complex_matrix cholesky_factor(const complex_matrix &m) {
    const std::size_t n = m.rows();
    complex_matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
        if (!(pivot > 0.0)) throw not_positive_definite("nonpositive Cholesky pivot");
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx z = m(i, j);
            for (std::size_t k = 0; k < j; ++k) z -= l(i, k) * std::conj(l(j, k));
            l(i, j) = z / ljj;
        }
    }
    return l;
}

namespace detail {

// Solves L L^H x = b in place of the column buffer.
inline void cholesky_solve_column(const complex_matrix &l, complex_vector &x) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        cplx z = x[i];
        for (std::size_t k = 0; k < i; ++k) z -= l(i, k) * x[k];
        x[i] = z / l(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx z = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) z -= std::conj(l(k, ii)) * x[k];
        x[ii] = z / l(ii, ii).real();
    }
}

} // namespace detail

/// Solves M X = B for Hermitian positive definite M via Cholesky.
inline complex_matrix hermitian_solve(const complex_matrix &m, const complex_matrix &b) {
    require_hermitian(m);
    if (b.rows() != m.rows()) throw dimension_mismatch("hermitian_solve: row count mismatch");
    if (m.rows() == 0) return b;
    const complex_matrix l = cholesky_factor(m);
    complex_matrix x(b.rows(), b.cols());
    complex_vector col(b.rows());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        detail::cholesky_solve_column(l, col);
        for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = col[i];
    }
    return x;
}

inline complex_vector hermitian_solve(const complex_matrix &m, const complex_vector &b) {
    require_hermitian(m);
    if (b.size() != m.rows()) throw dimension_mismatch("hermitian_solve: length mismatch");
    if (m.rows() == 0) return b;
    const complex_matrix l = cholesky_factor(m);
    complex_vector x = b;
    detail::cholesky_solve_column(l, x);
    return x;
}

/// Explicit inverse of a Hermitian positive definite matrix. The inverse of
/// a 0x0 matrix is itself. Output is symmetrized.
inline complex_matrix hermitian_inverse(const complex_matrix &m) {
    if (m.rows() != m.cols()) throw dimension_mismatch("hermitian_inverse: matrix is not square");
    if (m.rows() == 0) return m;
    return symmetrized(hermitian_solve(m, complex_matrix::identity(m.rows())));
}

/// Woodbury step for an inverse under a rank-one Gram extension:
///
///   A1 = A - (A rho^H rho A) / (1 + rho A rho^H)
///
/// equals inverse(inverse(A) + rho^H rho). rho is the new observation row;
/// this treats it as the row rho, conjugating internally where the column
/// rho^H is meant. Output is symmetrized, so the Hermitian invariant is
/// exact after arbitrarily long update chains.
inline complex_matrix rank_one_inverse_update(const complex_matrix &a, const complex_vector &rho) {
    require_hermitian(a);
    if (rho.size() != a.rows())
        throw dimension_mismatch("rank_one_inverse_update: rho length mismatch");
    const std::size_t n = a.rows();
    if (n == 0) return a;

    const complex_vector v = mat_vec(a, conjugated(rho)); // A rho^H
    cplx quad{0.0, 0.0};                                  // rho A rho^H
    for (std::size_t k = 0; k < n; ++k) quad += rho[k] * v[k];
    const cplx denom = cplx{1.0, 0.0} + quad;
    if (std::abs(denom) < denominator_tolerance)
        throw degenerate_denominator("rank_one_inverse_update: |1 + rho A rho^H| below tolerance");

    complex_matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j) - v[i] * std::conj(v[j]) / denom;
    return symmetrized(out);
}

} // namespace ircgain
