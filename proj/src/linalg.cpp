#include "wpsk/linalg.hpp"

#include "wpsk/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wpsk {

std::optional<Matrix> cholesky(const Matrix& sym) {
    const std::size_t n = sym.rows();
    Matrix lower(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Real diag = sym.at(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= lower.at(j, k) * lower.at(j, k);
        if (diag <= 0) return std::nullopt;
        lower.at(j, j) = sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            Real v = sym.at(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= lower.at(i, k) * lower.at(j, k);
            lower.at(i, j) = v / lower.at(j, j);
        }
    }
    return lower;
}

std::vector<Real> forward_substitute(const Matrix& lower, std::span<const Real> rhs) {
    const std::size_t n = lower.rows();
    std::vector<Real> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real v = rhs[i];
        for (std::size_t k = 0; k < i; ++k) v -= lower.at(i, k) * y[k];
        y[i] = v / lower.at(i, i);
    }
    return y;
}

std::vector<Real> cholesky_solve(const Matrix& lower, std::span<const Real> rhs) {
    const std::size_t n = lower.rows();
    std::vector<Real> y = forward_substitute(lower, rhs);
    std::vector<Real> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real v = y[i];
        for (std::size_t k = i + 1; k < n; ++k) v -= lower.at(k, i) * x[k];
        x[i] = v / lower.at(i, i);
    }
    return x;
}

Real cholesky_condition_estimate(const Matrix& lower) {
    Real mx = lower.at(0, 0), mn = lower.at(0, 0);
    for (std::size_t i = 1; i < lower.rows(); ++i) {
        mx = (std::max)(mx, lower.at(i, i));
        mn = (std::min)(mn, lower.at(i, i));
    }
    return (mx / mn) * (mx / mn);
}

Real power_iteration_largest(
    const std::function<void(std::span<const Real>, std::span<Real>)>& apply, std::size_t dim,
    const Real& rel_tol, std::size_t max_iterations) {
    if (dim == 0) return Real(0);
    std::vector<Real> v(dim), w(dim);
    for (std::size_t i = 0; i < dim; ++i)
        v[i] = 1 + Real(static_cast<unsigned long>(i)) / Real(1000);  // deterministic, not sign-symmetric
    Real rho_prev = -1;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        apply(v, w);
        Real num = 0, den = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            num += v[i] * w[i];
            den += v[i] * v[i];
        }
        if (den == 0) return Real(0);
        Real rho = num / den;
        if (rho == 0) return Real(0);  // zero operator
        if (rho_prev >= 0 && abs(rho - rho_prev) <= rel_tol * abs(rho)) return rho;
        rho_prev = rho;
        Real norm = 0;
        for (std::size_t i = 0; i < dim; ++i) norm += w[i] * w[i];
        norm = sqrt(norm);
        if (norm == 0) return Real(0);
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / norm;
    }
    throw numerical_error("power iteration did not converge");
}

}  // namespace wpsk
