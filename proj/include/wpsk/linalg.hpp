#pragma once

#include "wpsk/real.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wpsk {

/// Minimal dense square matrix, row major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Real(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Real& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Real& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Real> data_;
};

/// Lower-triangular Cholesky factor of a symmetric matrix; nullopt if a pivot
/// fails (matrix not numerically positive definite at this precision).
std::optional<Matrix> cholesky(const Matrix& sym);

/// Solves L y = rhs (forward substitution).
std::vector<Real> forward_substitute(const Matrix& lower, std::span<const Real> rhs);

/// Solves (L L^T) x = rhs.
std::vector<Real> cholesky_solve(const Matrix& lower, std::span<const Real> rhs);

/// Rough condition estimate (max diag / min diag of L)^2.
Real cholesky_condition_estimate(const Matrix& lower);

/// Largest eigenvalue of a symmetric positive semidefinite operator by power
/// iteration with Rayleigh-quotient convergence. apply(v, out) must compute
/// out = M v. Throws numerical_error if not converged within max_iterations.
Real power_iteration_largest(
    const std::function<void(std::span<const Real>, std::span<Real>)>& apply, std::size_t dim,
    const Real& rel_tol, std::size_t max_iterations = 2000);

}  // namespace wpsk
