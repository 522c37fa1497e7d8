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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ircgain {

using cplx = std::complex<double>;

// Everything thrown by this library derives from ircgain::error.
class error : public std::runtime_error {
  public:
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

class dimension_mismatch : public error { public: using error::error; };
class non_finite_input : public error { public: using error::error; };
class not_hermitian : public error { public: using error::error; };
class not_positive_definite : public error { public: using error::error; };
class degenerate_denominator : public error { public: using error::error; };
class invalid_parameter : public error { public: using error::error; };
class empty_pool : public error { public: using error::error; };
class insufficient_candidates : public error { public: using error::error; };
class unknown_ue : public error { public: using error::error; };
class unknown_bs : public error { public: using error::error; };
class empty_list : public error { public: using error::error; };
class negative_snr : public error { public: using error::error; };

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense complex vector, double precision. Entries are validated to be
/// finite when constructed from user data; computed results are the
/// caller's responsibility.
class complex_vector {
  public:
    complex_vector() = default;

    explicit complex_vector(std::size_t n) : v_(n, cplx{0.0, 0.0}) {}

    complex_vector(std::initializer_list<cplx> init) : v_(init) { check_finite(); }

    explicit complex_vector(std::vector<cplx> data) : v_(std::move(data)) { check_finite(); }

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    cplx &operator[](std::size_t i) { return v_[i]; }
    cplx operator[](std::size_t i) const { return v_[i]; }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool all_finite() const {
        for (cplx z : v_)
            if (!is_finite(z)) return false;
        return true;
    }

  private:
    void check_finite() const {
        if (!all_finite()) throw non_finite_input("complex_vector: non-finite entry");
    }

    std::vector<cplx> v_;
};

/// Dense complex matrix, double precision, row-major. Indexing contract is
/// (row, col). A 0x0 matrix is a valid value (no interferers).
class complex_matrix {
  public:
    complex_matrix() = default;

    complex_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), m_(rows * cols, cplx{0.0, 0.0}) {}

    complex_matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), m_(std::move(entries)) {
        if (m_.size() != rows_ * cols_)
            throw dimension_mismatch("complex_matrix: entry count does not match rows x cols");
        if (!all_finite()) throw non_finite_input("complex_matrix: non-finite entry");
    }

    static complex_matrix identity(std::size_t n) {
        complex_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return m_.empty(); }

    cplx &operator()(std::size_t r, std::size_t c) { return m_[r * cols_ + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return m_[r * cols_ + c]; }

    bool all_finite() const {
        for (cplx z : m_)
            if (!is_finite(z)) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> m_;
};

/// Conjugated inner product, conj(x) . y.
inline cplx cdot(const complex_vector &x, const complex_vector &y) {
    if (x.size() != y.size()) throw dimension_mismatch("cdot: length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

inline double norm_sq(const complex_vector &x) {
    double acc = 0.0;
    for (cplx z : x) acc += std::norm(z);
    return acc;
}

inline complex_vector conjugated(const complex_vector &x) {
    complex_vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::conj(x[i]);
    return out;
}

inline complex_matrix conj_transpose(const complex_matrix &m) {
    complex_matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

inline complex_matrix matmul(const complex_matrix &a, const complex_matrix &b) {
    if (a.cols() != b.rows()) throw dimension_mismatch("matmul: inner dimensions differ");
    complex_matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline complex_vector mat_vec(const complex_matrix &m, const complex_vector &x) {
    if (m.cols() != x.size()) throw dimension_mismatch("mat_vec: dimensions differ");
    complex_vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        out[i] = acc;
    }
    return out;
}

/// sigma2 * I + M^H M. The regularized Gram matrix every solve in this
/// library goes through; positive definite for sigma2 > 0.
inline complex_matrix regularized_gram(const complex_matrix &m, double sigma2) {
    complex_matrix out(m.cols(), m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cplx acc = (i == j) ? cplx{sigma2, 0.0} : cplx{0.0, 0.0};
            for (std::size_t k = 0; k < m.rows(); ++k) acc += std::conj(m(k, i)) * m(k, j);
            out(i, j) = acc;
        }
    return out;
}

/// sigma2 * I + M M^H (the outer, antenna-side form).
inline complex_matrix regularized_outer_gram(const complex_matrix &m, double sigma2,
                                             std::size_t n_rows) {
    complex_matrix out(n_rows, n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        out(i, i) = sigma2;
        for (std::size_t j = 0; j < n_rows; ++j)
            for (std::size_t k = 0; k < m.cols(); ++k) out(i, j) += m(i, k) * std::conj(m(j, k));
    }
    return out;
}

inline double max_abs(const complex_matrix &m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

inline double max_abs_diff(const complex_matrix &a, const complex_matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_mismatch("max_abs_diff: shape mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
    return best;
}

inline complex_vector column(const complex_matrix &m, std::size_t j) {
    complex_vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
    return out;
}

inline complex_vector row(const complex_matrix &m, std::size_t i) {
    complex_vector out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = m(i, j);
    return out;
}

inline complex_matrix from_columns(std::size_t n_rows, const std::vector<complex_vector> &cols) {
    complex_matrix out(n_rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n_rows) throw dimension_mismatch("from_columns: column length mismatch");
        for (std::size_t i = 0; i < n_rows; ++i) out(i, j) = cols[j][i];
    }
    return out;
}

inline complex_vector concat(const complex_vector &a, const complex_vector &b) {
    complex_vector out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[a.size() + i] = b[i];
    return out;
}

} // namespace ircgain
