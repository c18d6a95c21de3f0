/*
 * Copyright 2026 The glass authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "core/error.hpp"

namespace glass {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise_invalid("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        worst = std::max(worst, std::abs(a.data_[i] - b.data_[i]));
    return worst;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) raise_invalid("multiply: shape mismatch");
    Matrix c(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size()) raise_invalid("multiply: shape mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

LuFactor::LuFactor(Matrix a) : lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) raise_invalid("LU requires a square matrix");
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        // partial pivoting: largest magnitude in column k at or below the diagonal
        std::size_t pivot = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0)
            raise_numeric("singular linear system: zero pivot at column " + std::to_string(k));
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
            std::swap(perm_[k], perm_[pivot]);
        }
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) * inv;
            lu_(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
        }
    }
}

std::vector<double> LuFactor::solve(const std::vector<double>& rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n) raise_invalid("LU solve: rhs size mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 1; i < n; ++i) {
        double acc = x[i];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
        x[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_(ii, j) * x[j];
        x[ii] = acc / lu_(ii, ii);
    }
    return x;
}

Matrix LuFactor::solve(const Matrix& rhs) const {
    const std::size_t n = size();
    if (rhs.rows() != n) raise_invalid("LU solve: rhs rows mismatch");
    Matrix x(n, rhs.cols());
    std::vector<double> col(n);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        std::vector<double> sol = solve(col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
}

double max_residual(const Matrix& a, const Matrix& x, const Matrix& b) {
    Matrix ax = multiply(a, x);
    return Matrix::max_abs_diff(ax, b);
}

double max_residual(const Matrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    std::vector<double> ax = multiply(a, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i)
        worst = std::max(worst, std::abs(ax[i] - b[i]));
    return worst;
}

QrFactor::QrFactor(Matrix a) : qr_(std::move(a)) {
    const std::size_t m = qr_.rows(), n = qr_.cols();
    if (m < n) raise_invalid("QR requires rows >= cols");
    beta_.assign(n, 0.0);
    rdiag_.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += qr_(i, k) * qr_(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0)
            raise_numeric("rank-deficient design: column " + std::to_string(k) +
                          " is annihilated by its predecessors");
        const double alpha = qr_(k, k) >= 0.0 ? -norm : norm;
        const double v0 = qr_(k, k) - alpha;
        beta_[k] = -1.0 / (alpha * v0);
        qr_(k, k) = v0;  // reflector lives in column k from the diagonal down
        for (std::size_t j = k + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += qr_(i, k) * qr_(i, j);
            dot *= beta_[k];
            for (std::size_t i = k; i < m; ++i) qr_(i, j) -= dot * qr_(i, k);
        }
        rdiag_[k] = alpha;
    }
}

std::vector<double> QrFactor::solve(const std::vector<double>& b) const {
    const std::size_t m = rows(), n = cols();
    if (b.size() != m) raise_invalid("QR solve: rhs size mismatch");
    std::vector<double> y = b;
    for (std::size_t k = 0; k < n; ++k) {
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += qr_(i, k) * y[i];
        dot *= beta_[k];
        for (std::size_t i = k; i < m; ++i) y[i] -= dot * qr_(i, k);
    }
    std::vector<double> x(n);
    for (std::size_t kk = n; kk-- > 0;) {
        double acc = y[kk];
        for (std::size_t j = kk + 1; j < n; ++j) acc -= qr_(kk, j) * x[j];
        x[kk] = acc / rdiag_[kk];
    }
    return x;
}

Matrix QrFactor::xtx_inverse() const {
    const std::size_t n = cols();
    // R^{-1} by back substitution against unit columns, then R^{-1} R^{-T}
    Matrix rinv(n, n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> x(n, 0.0);
        for (std::size_t kk = n; kk-- > 0;) {
            double acc = (kk == c) ? 1.0 : 0.0;
            for (std::size_t j = kk + 1; j < n; ++j) acc -= qr_(kk, j) * x[j];
            x[kk] = acc / rdiag_[kk];
        }
        for (std::size_t i = 0; i < n; ++i) rinv(i, c) = x[i];
    }
    Matrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += rinv(i, k) * rinv(j, k);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace glass
