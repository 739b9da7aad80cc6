#include <doctest.h>

#include "wpsk/sequences.hpp"

#include <cmath>

using namespace wpsk;

namespace {

bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("sequences") {

TEST_CASE("log_factorial small values are exact") {
    CHECK(log_factorial(0) == 0);
    CHECK(close(log_factorial(5), log(Real(120)), Real("1e-55")));
    // integer factorials recovered exactly through n = 20
    Real expected = 1;
    for (unsigned n = 1; n <= 20; ++n) {
        expected *= n;
        CHECK(close(exp(log_factorial(n)), expected, expected * Real("1e-50")));
    }
}

TEST_CASE("log_factorial sits inside the stirling bracket") {
    const Real half_log_2pi = log(2 * pi_value()) / 2;
    for (std::size_t n : {1, 2, 5, 50, 500, 100000}) {
        Real nn(static_cast<unsigned long>(n));
        Real low = half_log_2pi + (nn + Real(1) / 2) * log(nn) - nn;
        Real lf = log_factorial(n);
        CHECK(lf > low);
        CHECK(lf < low + 1);
    }
}

TEST_CASE("family formulas at small k") {
    CHECK(close(AlphaSequence::gaussian(Real(1)).log_alpha(3), log(Real(6)), Real("1e-55")));
    CHECK(close(AlphaSequence::exponential(Real(2)).log_alpha(2), log(Real(1) / 2), Real("1e-55")));
    CHECK(close(AlphaSequence::bessel(Real(1)).log_alpha(2), log(Real(4)), Real("1e-55")));
    CHECK(close(AlphaSequence::hermite(Real(1), Real(2)).log_alpha(1), -log(Real(4)), Real("1e-55")));
    CHECK(close(AlphaSequence::power(Real(2)).log_alpha(3), 2 * log(Real(6)), Real("1e-55")));
}

TEST_CASE("log alpha increments grow for factorial families") {
    for (const AlphaSequence& seq :
         {AlphaSequence::gaussian(Real("0.5")), AlphaSequence::exponential(Real(2)),
          AlphaSequence::bessel(Real(1))}) {
        Real prev_increment = seq.log_alpha(1) - seq.log_alpha(0);
        for (std::size_t k = 2; k <= 40; ++k) {
            Real increment = seq.log_alpha(k) - seq.log_alpha(k - 1);
            CHECK(increment > prev_increment);
            prev_increment = increment;
        }
    }
}

TEST_CASE("declared lambda certifies the assumption for every family") {
    CHECK(verify_alpha_assumption(AlphaSequence::gaussian(Real(1)), Real(1), 100).holds);
    CHECK(verify_alpha_assumption(AlphaSequence::gaussian(Real("0.5")), Real("0.25"), 100).holds);
    CHECK(verify_alpha_assumption(AlphaSequence::exponential(Real(2)), Real(2), 100).holds);
    CHECK(verify_alpha_assumption(AlphaSequence::hermite(Real(1), Real("1.5")), Real("2.25"), 100).holds);
    CHECK(verify_alpha_assumption(AlphaSequence::bessel(Real("0.5")), Real("0.5"), 100).holds);
    CHECK(verify_alpha_assumption(AlphaSequence::power(Real(1)), Real(1), 100).holds);
}

TEST_CASE("power beta < 1 violates the assumption for lambda = 10") {
    AlphaSequence seq = AlphaSequence::power(Real("0.5"));
    CHECK_FALSE(seq.has_lambda());
    auto report = verify_alpha_assumption(seq, Real(10), 200);
    REQUIRE_FALSE(report.holds);
    REQUIRE(report.first_violation.has_value());
    // brute-force oracle for the first violating pair in (n, k) scan order
    auto violates = [&](std::size_t k, std::size_t n) {
        Real lhs = seq.log_alpha(k) - seq.log_alpha(n);
        Real rhs = Real(static_cast<unsigned long>(n - k)) * log(Real(10)) + log_factorial(k) -
                   log_factorial(n);
        return lhs > rhs;
    };
    std::pair<std::size_t, std::size_t> expected{0, 0};
    bool found = false;
    for (std::size_t n = 0; n <= 200 && !found; ++n)
        for (std::size_t k = 0; k <= n && !found; ++k)
            if (violates(k, n)) {
                expected = {k, n};
                found = true;
            }
    REQUIRE(found);
    CHECK(report.first_violation->first == expected.first);
    CHECK(report.first_violation->second == expected.second);
}

TEST_CASE("identity pairs k = n always hold") {
    AlphaSequence seq = AlphaSequence::bessel(Real(3));
    auto report = verify_alpha_assumption(seq, Real("1e-6"), 1);
    // even a tiny lambda cannot break the k = n = 1 and k = n = 0 cases alone,
    // but k < n will fail; the report must point at a k < n pair
    if (!report.holds) CHECK(report.first_violation->first < report.first_violation->second);
}

TEST_CASE("estimate_min_lambda recovers the family lambda") {
    AlphaSequence seq = AlphaSequence::gaussian(Real("1.5"));
    Real estimated = estimate_min_lambda(seq, 60);
    CHECK(close(estimated, Real("2.25"), Real("1e-40")));
    CHECK(verify_alpha_assumption(seq, estimated, 60).holds);
}

TEST_CASE("lambda access on a power sequence without certificate throws") {
    CHECK_THROWS_AS(AlphaSequence::power(Real("0.5")).lambda(), std::domain_error);
    CHECK_NOTHROW(AlphaSequence::power(Real("1.5")).lambda());
}

TEST_CASE("concurrent memo extension is consistent") {
    AlphaSequence seq = AlphaSequence::gaussian(Real(1));
    std::vector<Real> values(400);
    parallel_for(400, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) values[k] = seq.log_alpha(k);
    });
    for (std::size_t k = 0; k < 400; ++k) CHECK(values[k] == log_factorial(k));
}

}  // TEST_SUITE
