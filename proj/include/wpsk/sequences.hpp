#pragma once

#include "wpsk/real.hpp"

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace wpsk {

/// ln(n!), exact to working precision. Satisfies the two-sided Stirling bracket
/// sqrt(2*pi) n^{n+1/2} e^{-n} < n! < sqrt(2*pi) n^{n+1/2} e^{-n+1} for n >= 1.
Real log_factorial(std::size_t n);

enum class Family { gaussian, exponential, hermite, bessel, power };

const char* family_name(Family f);

/// Coefficient sequence alpha_k of a weighted power series kernel, handled
/// exclusively in the log domain. Each built-in family carries the lambda that
/// certifies alpha_k / alpha_n <= lambda^{n-k} k!/n!; the power family has one
/// only for beta >= 1. Immutable and safe for concurrent reads: the lazy value
/// table is extended under a lock shared by all copies.
class AlphaSequence {
public:
    static AlphaSequence gaussian(const Real& epsilon);           // alpha_k = eps^{-2k} k!,   lambda = eps^2
    static AlphaSequence exponential(const Real& epsilon);        // alpha_k = eps^{-k} k!,    lambda = eps
    static AlphaSequence hermite(const Real& epsilon, const Real& tau);  // alpha_k = (tau eps)^{-2k} k!, lambda = (tau eps)^2
    static AlphaSequence bessel(const Real& epsilon);             // alpha_k = eps^{-k} k!^2,  lambda = eps
    static AlphaSequence power(const Real& beta);                 // alpha_k = k!^beta

    Family family() const { return family_; }
    const Real& epsilon() const { return epsilon_; }
    const Real& tau() const { return tau_; }
    const Real& beta() const { return beta_; }

    bool has_lambda() const { return lambda_.has_value(); }
    const Real& lambda() const;  // throws std::domain_error when absent

    /// ln(alpha_k); memoized.
    Real log_alpha(std::size_t k) const;

private:
    AlphaSequence(Family f, Real eps, Real tau, Real beta, std::optional<Real> lambda);

    Real log_alpha_formula(std::size_t k) const;
    void check_summability() const;

    Family family_;
    Real epsilon_;
    Real tau_;
    Real beta_;
    std::optional<Real> lambda_;

    struct Memo {
        std::mutex mutex;
        std::vector<Real> values;
    };
    std::shared_ptr<Memo> memo_;
};

struct AlphaAssumptionReport {
    bool holds = false;
    std::optional<std::pair<std::size_t, std::size_t>> first_violation;  // (k, n)
};

/// Exhaustive log-domain check of alpha_k/alpha_n <= lambda^{n-k} k!/n!
/// over all 0 <= k <= n <= n_max.
AlphaAssumptionReport verify_alpha_assumption(const AlphaSequence& seq, const Real& lambda,
                                              std::size_t n_max);

/// Smallest lambda for which the assumption holds up to n_max, estimated by
/// scanning the supremum of (alpha_k/alpha_n * n!/k!)^{1/(n-k)} over pairs.
Real estimate_min_lambda(const AlphaSequence& seq, std::size_t n_max);

}  // namespace wpsk
