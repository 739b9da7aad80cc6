#include <doctest.h>

#include "wpsk/bounds.hpp"
#include "wpsk/kernels.hpp"
#include "wpsk/polynomials.hpp"

#include <random>

using namespace wpsk;

namespace {

bool rel(const Real& a, const Real& b, const Real& tol) {
    return abs(a - b) <= tol * (std::max)(abs(a), abs(b));
}

// independent oracle for the extremal family alpha_k = lambda^{-k} k!:
// C_R^{2n} = e^lambda lambda^n n! L_n(-lambda)
Real cr2n_oracle(const Real& lambda, std::size_t n) {
    return exp(lambda) * pow(lambda, static_cast<unsigned long>(n)) * exp(log_factorial(n)) *
           laguerre(n, lambda);
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("weight envelopes") {
    WeightFunction unit = WeightFunction::unit();
    CHECK(unit(Real("0.3")) == 1);
    CHECK(unit.min_value() == 1);
    CHECK(unit.verify_envelope(100000));

    WeightFunction gw = WeightFunction::gaussian(Real("1.5"));
    CHECK(rel(gw.min_value(), exp(-Real("1.125")), Real("1e-55")));
    CHECK(gw.max_value() == 1);
    CHECK(gw.verify_envelope(100000));
    CHECK(gw(Real(0)) == 1);
}

TEST_CASE("closed-form values") {
    auto ek = Kernel::exponential(Real(1));
    CHECK(rel((*ek)(Real(1), Real(1)), euler_value(), Real("1e-55")));
    auto gk = Kernel::gaussian(Real("0.7"));
    CHECK((*gk)(Real("0.4"), Real("0.4")) == 1);
    auto bk = Kernel::bessel(Real(1));
    CHECK(rel((*bk)(Real(0), Real("0.9")), Real(1), Real("1e-55")));
}

TEST_CASE("series evaluation agrees with closed forms to 1e-25") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::shared_ptr<const Kernel>> kernels = {
        Kernel::gaussian(Real("0.8")), Kernel::exponential(Real("1.7")),
        Kernel::hermite(Real("0.9"), Real("1.4")), Kernel::bessel(Real("1.2"))};
    for (const auto& kernel : kernels) {
        for (int trial = 0; trial < 25; ++trial) {
            Real x(dist(rng)), y(dist(rng));
            Real closed = kernel_eval(*kernel, x, y, KernelEvalMode::closed_form);
            Real series = kernel_eval(*kernel, x, y, KernelEvalMode::series, Real("1e-35"));
            CHECK(rel(closed, series, Real("1e-25")));
        }
    }
}

TEST_CASE("kernel symmetry and positivity on the diagonal") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (const auto& kernel : {Kernel::gaussian(Real(2)), Kernel::bessel(Real("0.6"))}) {
        for (int trial = 0; trial < 20; ++trial) {
            Real x(dist(rng)), y(dist(rng));
            CHECK((*kernel)(x, y) == (*kernel)(y, x));
            CHECK((*kernel)(x, x) > 0);
        }
    }
}

TEST_CASE("power family evaluates through the series only") {
    auto pk = Kernel::power(Real("0.5"));
    CHECK_FALSE(pk->has_closed_form());
    CHECK(pk->eval_series(Real("0.5"), Real("0.5"), Real("1e-30")) > 1);
    CHECK_THROWS_AS(pk->eval_closed(Real(0), Real(0)), std::domain_error);
}

TEST_CASE("kernel_eval rejects arguments outside [-1,1]") {
    auto gk = Kernel::gaussian(Real(1));
    CHECK_THROWS_AS(kernel_eval(*gk, Real(2), Real(0), KernelEvalMode::closed_form),
                    std::domain_error);
}

TEST_CASE("mehler parameterisation matches the series") {
    for (double rd : {0.3, 0.5, 0.9}) {
        Real r(rd);
        Real eps = sqrt(r * r / (1 - r * r));
        Real tau = sqrt(1 / r);
        auto kernel = Kernel::hermite(eps, tau);
        for (double xd : {-0.7, 0.2, 0.9}) {
            for (double yd : {-0.5, 0.6}) {
                Real closed = kernel->eval_closed(Real(xd), Real(yd));
                Real series = kernel->eval_series(Real(xd), Real(yd), Real("1e-35"));
                CHECK(rel(closed, series, Real("1e-20")));
            }
        }
    }
}

TEST_CASE("cr2n exact values for small orders") {
    AlphaSequence exp1 = AlphaSequence::exponential(Real(1));
    CHECK(rel(exp(log_cr2n_exact(exp1, 0)), euler_value(), Real("1e-30")));
    CHECK(rel(exp(log_cr2n_exact(exp1, 1)), 2 * euler_value(), Real("1e-30")));
    AlphaSequence g1 = AlphaSequence::gaussian(Real(1));
    CHECK(rel(exp(log_cr2n_exact(g1, 0)), euler_value(), Real("1e-30")));
}

TEST_CASE("cr2n exact matches the laguerre identity for extremal families") {
    for (double ld : {0.25, 1.0, 4.0}) {
        Real lambda(ld);
        AlphaSequence alpha = AlphaSequence::exponential(lambda);
        for (std::size_t n : {0, 1, 2, 5, 12, 30}) {
            Real direct = exp(log_cr2n_exact(alpha, n));
            CHECK(rel(direct, cr2n_oracle(lambda, n), Real("1e-30")));
        }
    }
}

TEST_CASE("cr2n exact requires a certificate") {
    AlphaSequence p = AlphaSequence::power(Real("0.5"));
    CHECK_THROWS_AS(log_cr2n_exact(p, 2), std::domain_error);
}

TEST_CASE("cr2n bound gates at m_L and dominates for lambda <= 1") {
    AlphaSequence exp1 = AlphaSequence::exponential(Real(1));
    CHECK_FALSE(log_cr2n_bound(exp1, 8).applicable);
    CHECK(log_cr2n_bound(exp1, 9).applicable);
    for (double ld : {0.25, 1.0}) {
        AlphaSequence alpha = AlphaSequence::exponential(Real(ld));
        auto start = static_cast<std::size_t>(static_cast<long>(ceil(mL(Real(ld)))));
        for (std::size_t n = start; n <= 60; ++n) {
            Cr2nBound bound = log_cr2n_bound(alpha, n);
            CHECK(log_cr2n_exact(alpha, n) <= bound.log_value);
        }
    }
}

TEST_CASE("cr2n bound is exceeded at lambda = 4 (known slack deficit of the constant)") {
    AlphaSequence alpha = AlphaSequence::exponential(Real(4));
    Cr2nBound bound = log_cr2n_bound(alpha, 36);
    REQUIRE(bound.applicable);
    Real excess = log_cr2n_exact(alpha, 36) - bound.log_value;
    CHECK(excess > 0);
    CHECK(excess < 2);  // a constant-factor gap, not a rate failure
}

TEST_CASE("ck2n gaussian closed form") {
    CHECK(abs(log_ck2n_gaussian(Real(1), 0)) < Real("1e-55"));
    CHECK(abs(log_ck2n_gaussian(Real(1), 1)) < Real("1e-55"));  // 2!/2 = 1
    CHECK(rel(exp(log_ck2n_gaussian(Real(2), 3)), Real(960), Real("1e-50")));
}

}  // TEST_SUITE
