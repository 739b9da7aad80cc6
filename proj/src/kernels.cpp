#include "wpsk/kernels.hpp"

#include "wpsk/bounds.hpp"
#include "wpsk/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wpsk {

WeightFunction::WeightFunction(Kind kind, Real eps, Real lo, Real hi)
    : kind_(kind), epsilon_(std::move(eps)), phi_min_(std::move(lo)), phi_max_(std::move(hi)) {}

WeightFunction WeightFunction::unit() { return WeightFunction(Kind::unit, 0, 1, 1); }

WeightFunction WeightFunction::gaussian(const Real& epsilon) {
    if (epsilon <= 0) throw std::domain_error("gaussian weight: epsilon must be positive");
    return WeightFunction(Kind::gaussian_weight, epsilon, exp(-epsilon * epsilon / 2), 1);
}

Real WeightFunction::operator()(const Real& x) const {
    if (kind_ == Kind::unit) return Real(1);
    return exp(-epsilon_ * epsilon_ * x * x / 2);
}

bool WeightFunction::verify_envelope(std::size_t grid_points) const {
    // Envelope sanity only; double precision is ample at 1e-12 slack.
    const double lo = static_cast<double>(phi_min_) * (1 - 1e-12);
    const double hi = static_cast<double>(phi_max_) * (1 + 1e-12);
    const double e2 = kind_ == Kind::unit ? 0.0 : static_cast<double>(epsilon_ * epsilon_);
    for (std::size_t i = 0; i < grid_points; ++i) {
        double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        double v = kind_ == Kind::unit ? 1.0 : std::exp(-e2 * x * x / 2);
        if (std::abs(v) < lo || std::abs(v) > hi) return false;
    }
    return true;
}

Kernel::Kernel(AlphaSequence alpha, WeightFunction phi)
    : alpha_(std::move(alpha)), phi_(std::move(phi)) {}

std::shared_ptr<const Kernel> Kernel::gaussian(const Real& epsilon) {
    return std::make_shared<Kernel>(AlphaSequence::gaussian(epsilon), WeightFunction::gaussian(epsilon));
}

std::shared_ptr<const Kernel> Kernel::exponential(const Real& epsilon) {
    return std::make_shared<Kernel>(AlphaSequence::exponential(epsilon), WeightFunction::unit());
}

std::shared_ptr<const Kernel> Kernel::hermite(const Real& epsilon, const Real& tau) {
    return std::make_shared<Kernel>(AlphaSequence::hermite(epsilon, tau), WeightFunction::gaussian(epsilon));
}

std::shared_ptr<const Kernel> Kernel::bessel(const Real& epsilon) {
    return std::make_shared<Kernel>(AlphaSequence::bessel(epsilon), WeightFunction::unit());
}

std::shared_ptr<const Kernel> Kernel::power(const Real& beta) {
    return std::make_shared<Kernel>(AlphaSequence::power(beta), WeightFunction::unit());
}

bool Kernel::has_closed_form() const { return alpha_.family() != Family::power; }

Real Kernel::eval_closed(const Real& x, const Real& y) const {
    const Real& eps = alpha_.epsilon();
    switch (alpha_.family()) {
        case Family::gaussian: {
            Real d = x - y;
            return exp(-eps * eps * d * d / 2);
        }
        case Family::exponential:
            return exp(eps * x * y);
        case Family::hermite: {
            const Real& tau = alpha_.tau();
            return exp(-eps * eps * (x * x + y * y) / 2 + tau * tau * eps * eps * x * y);
        }
        case Family::bessel: {
            // The defining series in z = eps*x*y; one source of truth with the kernel sum.
            Real z = eps * x * y;
            Real term = 1, acc = 0;
            for (unsigned long m = 0;; ++m) {
                acc += term;
                Real next = term * z / (Real(m + 1) * Real(m + 1));
                if (abs(next) <= abs(acc) * Real("1e-45") + Real("1e-200")) {
                    acc += next;
                    break;
                }
                term = next;
            }
            return acc;
        }
        case Family::power:
            break;
    }
    throw std::domain_error("kernel has no closed form");
}

Real Kernel::eval_series(const Real& x, const Real& y, const Real& rel_tol) const {
    const Real z = x * y;
    Real acc = 0;
    Real prev_ratio = 2;
    for (std::size_t k = 0; k < 10000; ++k) {
        Real inv_alpha_log = -alpha_.log_alpha(k);
        Real term = exp(inv_alpha_log) * pow(z, static_cast<unsigned long>(k));
        acc += term;
        // once the alpha^{-1} tail ratio stays below 1/2 its sum is dominated by a
        // geometric series: tail <= 2 * next term magnitude
        Real ratio = exp(alpha_.log_alpha(k) - alpha_.log_alpha(k + 1));
        Real tail_bound = 2 * exp(-alpha_.log_alpha(k + 1));
        if (ratio < Real(1) / 2 && ratio <= prev_ratio && tail_bound <= rel_tol * abs(acc))
            return phi_(x) * phi_(y) * acc;
        prev_ratio = ratio;
    }
    throw numerical_error("kernel series: truncation tolerance unreachable within 10^4 terms");
}

Real Kernel::operator()(const Real& x, const Real& y) const {
    return has_closed_form() ? eval_closed(x, y) : eval_series(x, y, Real("1e-30"));
}

Real kernel_eval(const Kernel& k, const Real& x, const Real& y, KernelEvalMode mode,
                 const Real& rel_tol) {
    if (abs(x) > 1 || abs(y) > 1) throw std::domain_error("kernel_eval: arguments must lie in [-1,1]");
    return mode == KernelEvalMode::closed_form ? k.eval_closed(x, y) : k.eval_series(x, y, rel_tol);
}

Real log_cr2n_exact(const AlphaSequence& alpha, std::size_t n, const Real& rel_tol) {
    if (!alpha.has_lambda())
        throw std::domain_error("log_cr2n_exact: alpha sequence lacks an (A-alpha) certificate");
    // Series at x = 1: term_k = alpha_k^{-1} (k!/(k-n)!)^2, k >= n. Terms first
    // grow then decay factorially; accumulate in linear Real (mpfr exponent
    // range is ample) and stop on the geometric tail certificate.
    Real acc = 0;
    Real log_term = -alpha.log_alpha(n) + 2 * log_factorial(n);
    Real term = exp(log_term);
    Real prev_ratio = -1;
    std::size_t consecutive_small = 0;
    for (std::size_t k = n; k < n + 10000; ++k) {
        acc += term;
        Real ratio = exp(alpha.log_alpha(k) - alpha.log_alpha(k + 1)) *
                     pow(Real(static_cast<unsigned long>(k + 1)) / Real(static_cast<unsigned long>(k + 1 - n)), 2);
        if (prev_ratio >= 0 && ratio >= 1 && prev_ratio >= 1 && k > n + 5000)
            throw std::domain_error("log_cr2n_exact: divergent term ratio");
        Real next = term * ratio;
        if (ratio < Real(1) / 2 && (prev_ratio < 0 || ratio <= prev_ratio)) {
            ++consecutive_small;
            if (consecutive_small >= 2 && 2 * next <= rel_tol * acc) return log(acc);
        } else {
            consecutive_small = 0;
        }
        prev_ratio = ratio;
        term = next;
    }
    throw numerical_error("log_cr2n_exact: tail certificate not reached within 10^4 terms");
}

Cr2nBound log_cr2n_bound(const AlphaSequence& alpha, std::size_t n) {
    Cr2nBound result;
    const Real& lambda = alpha.lambda();  // throws when absent
    if (Real(static_cast<unsigned long>(n)) < mL(lambda)) return result;
    result.applicable = true;
    Real nn(static_cast<unsigned long>(n));
    result.log_value =
        log_cL(lambda) - log(nn) / 4 + 2 * sqrt(lambda * nn) - alpha.log_alpha(n) + 2 * log_factorial(n);
    return result;
}

Real log_ck2n_gaussian(const Real& epsilon, std::size_t n) {
    Real nn(static_cast<unsigned long>(n));
    return 2 * nn * log(epsilon) + log_factorial(2 * n) - nn * ln2_value() - log_factorial(n);
}

}  // namespace wpsk
