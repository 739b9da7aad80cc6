#include "wpsk/sequences.hpp"

#include <stdexcept>

namespace wpsk {

Real log_factorial(std::size_t n) {
    if (n <= 1) return Real(0);
    return lgamma(Real(n) + 1);
}

const char* family_name(Family f) {
    switch (f) {
        case Family::gaussian: return "gaussian";
        case Family::exponential: return "exponential";
        case Family::hermite: return "hermite";
        case Family::bessel: return "bessel";
        case Family::power: return "power";
    }
    return "?";
}

AlphaSequence::AlphaSequence(Family f, Real eps, Real tau, Real beta, std::optional<Real> lambda)
    : family_(f),
      epsilon_(std::move(eps)),
      tau_(std::move(tau)),
      beta_(std::move(beta)),
      lambda_(std::move(lambda)),
      memo_(std::make_shared<Memo>()) {
    check_summability();
}

AlphaSequence AlphaSequence::gaussian(const Real& epsilon) {
    if (epsilon <= 0) throw std::domain_error("gaussian: epsilon must be positive");
    return AlphaSequence(Family::gaussian, epsilon, 1, 0, epsilon * epsilon);
}

AlphaSequence AlphaSequence::exponential(const Real& epsilon) {
    if (epsilon <= 0) throw std::domain_error("exponential: epsilon must be positive");
    return AlphaSequence(Family::exponential, epsilon, 1, 0, epsilon);
}

AlphaSequence AlphaSequence::hermite(const Real& epsilon, const Real& tau) {
    if (epsilon <= 0 || tau <= 0) throw std::domain_error("hermite: epsilon, tau must be positive");
    Real te = tau * epsilon;
    return AlphaSequence(Family::hermite, epsilon, tau, 0, te * te);
}

AlphaSequence AlphaSequence::bessel(const Real& epsilon) {
    if (epsilon <= 0) throw std::domain_error("bessel: epsilon must be positive");
    return AlphaSequence(Family::bessel, epsilon, 1, 0, epsilon);
}

AlphaSequence AlphaSequence::power(const Real& beta) {
    if (beta <= 0) throw std::domain_error("power: beta must be positive");
    std::optional<Real> lambda;
    if (beta >= 1) lambda = Real(1);
    return AlphaSequence(Family::power, 1, 1, beta, lambda);
}

const Real& AlphaSequence::lambda() const {
    if (!lambda_) throw std::domain_error("alpha sequence carries no (A-alpha) certificate lambda");
    return *lambda_;
}

Real AlphaSequence::log_alpha_formula(std::size_t k) const {
    Real kk(static_cast<unsigned long>(k));
    switch (family_) {
        case Family::gaussian: return -2 * kk * log(epsilon_) + log_factorial(k);
        case Family::exponential: return -kk * log(epsilon_) + log_factorial(k);
        case Family::hermite: return -2 * kk * log(tau_ * epsilon_) + log_factorial(k);
        case Family::bessel: return -kk * log(epsilon_) + 2 * log_factorial(k);
        case Family::power: return beta_ * log_factorial(k);
    }
    throw std::logic_error("unknown alpha family");
}

Real AlphaSequence::log_alpha(std::size_t k) const {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto& values = memo_->values;
    while (values.size() <= k) values.push_back(log_alpha_formula(values.size()));
    return values[k];
}

void AlphaSequence::check_summability() const {
    // Ratio test for sum alpha_k^{-1} < infinity on the first 200 terms:
    // alpha_k/alpha_{k+1} must stay strictly below 1 over the scanned window.
    for (std::size_t k = 100; k < 200; ++k) {
        Real ratio = exp(log_alpha_formula(k) - log_alpha_formula(k + 1));
        if (ratio >= Real("0.999"))
            throw std::domain_error("alpha sequence fails the summability ratio test");
    }
}

AlphaAssumptionReport verify_alpha_assumption(const AlphaSequence& seq, const Real& lambda,
                                              std::size_t n_max) {
    if (n_max < 1) throw std::domain_error("verify_alpha_assumption: n_max must be >= 1");
    if (lambda <= 0) throw std::domain_error("verify_alpha_assumption: lambda must be positive");
    AlphaAssumptionReport report;
    const Real log_lambda = log(lambda);
    // Equality cases (e.g. gaussian with lambda = eps^2) must pass: allow rounding slack.
    const Real slack = pow(Real(10), -Real(static_cast<int>(working_digits())) / 2);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const Real log_alpha_n = seq.log_alpha(n);
        const Real lf_n = log_factorial(n);
        for (std::size_t k = 0; k <= n; ++k) {
            Real lhs = seq.log_alpha(k) - log_alpha_n;
            Real rhs = Real(static_cast<unsigned long>(n - k)) * log_lambda + log_factorial(k) - lf_n;
            if (lhs > rhs + slack) {
                report.holds = false;
                report.first_violation = {k, n};
                return report;
            }
        }
    }
    report.holds = true;
    return report;
}

Real estimate_min_lambda(const AlphaSequence& seq, std::size_t n_max) {
    Real best_log = neg_inf();
    for (std::size_t n = 1; n <= n_max; ++n) {
        const Real log_alpha_n = seq.log_alpha(n);
        const Real lf_n = log_factorial(n);
        for (std::size_t k = 0; k < n; ++k) {
            Real candidate =
                (seq.log_alpha(k) - log_alpha_n - log_factorial(k) + lf_n) / Real(static_cast<unsigned long>(n - k));
            best_log = (std::max)(best_log, candidate);
        }
    }
    return exp(best_log);
}

}  // namespace wpsk
