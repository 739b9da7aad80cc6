#include "wpsk/rkhs.hpp"

#include "wpsk/quadrature.hpp"

#include <stdexcept>

namespace wpsk {

SeriesFunction::SeriesFunction(std::shared_ptr<const Kernel> kernel, std::vector<Real> coefficients)
    : kernel_(std::move(kernel)), coefficients_(std::move(coefficients)) {
    if (!kernel_) throw std::domain_error("SeriesFunction: kernel required");
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

bool SeriesFunction::is_zero() const {
    for (const Real& c : coefficients_)
        if (c != 0) return false;
    return true;
}

Real SeriesFunction::operator()(const Real& x) const {
    Real acc = 0;
    for (std::size_t i = coefficients_.size(); i-- > 0;) acc = acc * x + coefficients_[i];
    return kernel_->weight()(x) * acc;
}

Real log_series_norm(const SeriesFunction& f) {
    const auto& c = f.coefficients();
    std::vector<Real> log_terms;
    log_terms.reserve(c.size());
    const AlphaSequence& alpha = f.kernel().alpha();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        log_terms.push_back(alpha.log_alpha(k) + 2 * log(abs(c[k])));
    }
    if (log_terms.empty()) return neg_inf();
    return log_sum_exp(log_terms) / 2;
}

Real series_norm(const SeriesFunction& f) {
    Real ln = log_series_norm(f);
    if (isinf(ln) && ln < 0) return Real(0);
    return exp(ln);
}

Real series_inner(const SeriesFunction& f, const SeriesFunction& g) {
    if (&f.kernel() != &g.kernel())
        throw std::domain_error("series_inner: functions belong to different kernels");
    const auto& cf = f.coefficients();
    const auto& cg = g.coefficients();
    const AlphaSequence& alpha = f.kernel().alpha();
    Real acc = 0;
    const std::size_t m = (std::min)(cf.size(), cg.size());
    for (std::size_t k = 0; k < m; ++k) {
        if (cf[k] == 0 || cg[k] == 0) continue;
        Real sign = (cf[k] > 0) == (cg[k] > 0) ? 1 : -1;
        acc += sign * exp(alpha.log_alpha(k) + log(abs(cf[k])) + log(abs(cg[k])));
    }
    return acc;
}

SeriesFunction embed_polynomial(const Polynomial& p, std::shared_ptr<const Kernel> kernel) {
    return SeriesFunction(std::move(kernel), p.coefficients());
}

SeriesFunction truncated_kernel_section(std::shared_ptr<const Kernel> kernel, const Real& y,
                                        const Real& rel_tol) {
    // K(y, .) = phi(.) sum_k [alpha_k^{-1} phi(y) y^k] .^k
    const AlphaSequence& alpha = kernel->alpha();
    const Real phi_y = kernel->weight()(y);
    std::vector<Real> coeffs;
    Real acc_norm_sq = 0;
    for (std::size_t k = 0; k < 10000; ++k) {
        Real c = exp(-alpha.log_alpha(k)) * phi_y * pow(y, static_cast<unsigned long>(k));
        coeffs.push_back(c);
        acc_norm_sq += exp(alpha.log_alpha(k)) * c * c;
        Real ratio = exp(alpha.log_alpha(k) - alpha.log_alpha(k + 1));
        Real tail = 2 * exp(-alpha.log_alpha(k + 1)) * phi_y * phi_y;
        if (ratio < Real(1) / 2 && tail <= rel_tol * acc_norm_sq)
            return SeriesFunction(std::move(kernel), std::move(coeffs));
    }
    throw numerical_error("truncated_kernel_section: tail tolerance unreachable");
}

Real eval_series(const SeriesFunction& f, const Real& x) {
    if (abs(x) > 1) throw std::domain_error("eval_series: x must lie in [-1,1]");
    return f(x);
}

Real lp_norm(const SeriesFunction& f, LpNorm p) {
    if (f.is_zero()) return Real(0);
    if (p == LpNorm::sup) {
        MaxResult r = maximize_on_biunit(
            [&](const Real& x) {
                Real v = f(x);
                return v * v;
            },
            std::max<std::size_t>(4096, 64 * (f.coefficients().size() + 1)));
        return sqrt(r.value);
    }
    Real value_sq = integrate_doubling(
        [&](const Real& x) {
            Real v = f(x);
            return v * v;
        },
        Real("1e-12"));
    return sqrt(value_sq);
}

Real derivative_sup_norm(const SeriesFunction& f, std::size_t order) {
    if (!f.kernel().weight().is_unit())
        throw std::domain_error("derivative_sup_norm: only unit-weight series are supported");
    Polynomial d = f.polynomial_part().derivative(order);
    return poly_sup_norm(d);
}

}  // namespace wpsk
