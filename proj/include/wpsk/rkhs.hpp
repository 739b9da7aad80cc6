#pragma once

#include "wpsk/kernels.hpp"
#include "wpsk/polynomials.hpp"

#include <memory>

namespace wpsk {

/// Element of H(K) with finite support: f(x) = phi(x) * sum_k c_k x^k.
/// ||f||_K^2 = sum_k alpha_k c_k^2.
class SeriesFunction {
public:
    SeriesFunction(std::shared_ptr<const Kernel> kernel, std::vector<Real> coefficients);

    const Kernel& kernel() const { return *kernel_; }
    const std::shared_ptr<const Kernel>& kernel_ptr() const { return kernel_; }
    const std::vector<Real>& coefficients() const { return coefficients_; }
    bool is_zero() const;

    Polynomial polynomial_part() const { return Polynomial(coefficients_); }
    Real operator()(const Real& x) const;

private:
    std::shared_ptr<const Kernel> kernel_;
    std::vector<Real> coefficients_;
};

/// ln ||f||_K via log-sum-exp over log(alpha_k) + 2 log|c_k|; -inf for f = 0.
Real log_series_norm(const SeriesFunction& f);

/// Convenience linear-domain norm (exp of the above).
Real series_norm(const SeriesFunction& f);

/// <f, g>_K = sum_k alpha_k c_k c'_k; requires the same kernel object.
Real series_inner(const SeriesFunction& f, const SeriesFunction& g);

/// f = phi * P in H(K); the norm depends only on P and alpha (isometry with H(R)).
SeriesFunction embed_polynomial(const Polynomial& p, std::shared_ptr<const Kernel> kernel);

/// K(y, .) truncated so the dropped coefficient tail is below rel_tol.
SeriesFunction truncated_kernel_section(std::shared_ptr<const Kernel> kernel, const Real& y,
                                        const Real& rel_tol);

Real eval_series(const SeriesFunction& f, const Real& x);

/// ||f||_p on [-1,1]: sup via grid + refinement, L2 via order-doubling quadrature.
Real lp_norm(const SeriesFunction& f, LpNorm p);

/// sup |f^{(n)}| for unit-weight f (termwise differentiation of the polynomial
/// part). Weighted f is out of scope and rejected.
Real derivative_sup_norm(const SeriesFunction& f, std::size_t order);

}  // namespace wpsk
