#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wpsk {

/// Arbitrary-precision scalar. Precision (decimal digits) is set per thread via
/// set_working_digits(); freshly constructed values pick up the thread default,
/// and mixed-precision arithmetic widens to the more precise operand.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 60;

unsigned working_digits();
void set_working_digits(unsigned digits10);

/// Scoped precision override; restores the previous thread default on exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits10);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

Real pi_value();
Real euler_value();   // e
Real ln2_value();
Real ln10_value();

inline Real neg_inf() { return -std::numeric_limits<Real>::infinity(); }

/// ln -> log10 conversion for log-domain magnitudes.
inline Real log10_from_ln(const Real& ln_value) { return ln_value / ln10_value(); }

/// log(sum(exp(t_i))) with -inf entries ignored; returns -inf for an all--inf input.
Real log_sum_exp(std::span<const Real> log_terms);

inline bool rel_close(const Real& a, const Real& b, const Real& tol) {
    Real scale = (std::max)(abs(a), abs(b));
    if (scale == 0) return true;
    return abs(a - b) <= tol * scale;
}

/// Runs fn(begin, end) over chunks of [0, count) on a small thread pool.
/// Worker threads inherit the caller's working precision. Exceptions propagate.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

/// Thread count used by parallel_for (hardware_concurrency, overridable via WPSK_THREADS).
unsigned parallel_threads();

}  // namespace wpsk
