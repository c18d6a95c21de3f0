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

#pragma once

#include <cstddef>
#include <vector>

namespace glass {

/// Dense row-major matrix of doubles. Sized for chains with at most a few
/// hundred transient states, where direct factorisations are exact enough
/// and nothing fancier is warranted.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// max |a_ij - b_ij|; matrices must have equal shape.
    static double max_abs_diff(const Matrix& a, const Matrix& b);

  private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, const std::vector<double>& x);

/// LU factorisation with partial pivoting, PA = LU, stored packed.
class LuFactor {
  public:
    /// Factors a square matrix. Raises ErrorCode::numeric if a pivot is
    /// exactly zero (singular system).
    explicit LuFactor(Matrix a);

    std::size_t size() const { return lu_.rows(); }

    std::vector<double> solve(const std::vector<double>& rhs) const;
    /// Solves for every column of `rhs` at once.
    Matrix solve(const Matrix& rhs) const;

  private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

/// max-norm of A*x - b, the check applied after every solve.
double max_residual(const Matrix& a, const Matrix& x, const Matrix& b);
double max_residual(const Matrix& a, const std::vector<double>& x, const std::vector<double>& b);

/// Householder QR of a tall matrix (rows >= cols) without pivoting.
/// Used by the least-squares fitter; raises ErrorCode::numeric when a
/// diagonal of R vanishes (rank-deficient input).
class QrFactor {
  public:
    explicit QrFactor(Matrix a);

    std::size_t rows() const { return qr_.rows(); }
    std::size_t cols() const { return qr_.cols(); }

    /// Least-squares solution argmin |A x - b|_2.
    std::vector<double> solve(const std::vector<double>& b) const;

    /// (A^T A)^{-1}, computed as R^{-1} R^{-T}; needed for standard errors.
    Matrix xtx_inverse() const;

    /// Diagonal of R; near-zero entries signal rank deficiency.
    const std::vector<double>& r_diagonal() const { return rdiag_; }

  private:
    Matrix qr_;                  // reflectors in the lower triangle, R strictly above
    std::vector<double> beta_;   // Householder scaling factors
    std::vector<double> rdiag_;  // diagonal of R
};

}  // namespace glass
