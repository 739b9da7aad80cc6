#include <doctest.h>

#include "wpsk/worstcase.hpp"

#include <random>

using namespace wpsk;

namespace {

bool rel(const Real& a, const Real& b, const Real& tol) {
    return abs(a - b) <= tol * (std::max)(abs(a), abs(b));
}

WorstCaseConfig fast_config(LpNorm norm = LpNorm::sup) {
    WorstCaseConfig cfg;
    cfg.grid_size = 512;
    cfg.norm = norm;
    return cfg;
}

Real log10_to_value(const ErrorEstimate& e) { return pow(Real(10), e.log10_value); }

}  // namespace

TEST_SUITE("worstcase") {

TEST_CASE("pointwise worst case vanishes at interpolation nodes") {
    auto gk = Kernel::gaussian(Real(1));
    std::vector<Real> nodes = chebyshev_nodes(5);
    WorstCaseConfig cfg = fast_config();
    for (const LinearApproximation& a :
         {weighted_interpolant(gk, nodes), kernel_interpolant(gk, nodes, 60)}) {
        for (const Real& node : nodes) CHECK(pointwise_worst_case(a, node, cfg) <= Real("1e-40"));
    }
    CHECK_THROWS_AS(pointwise_worst_case(weighted_interpolant(gk, nodes), Real(2), cfg),
                    std::domain_error);
}

TEST_CASE("zero-node approximation has sup worst case sqrt(sup K(x,x)) = 1 for gaussian") {
    auto gk = Kernel::gaussian(Real(1));
    LinearApproximation empty = weighted_interpolant(gk, {});
    ErrorEstimate e = sup_worst_case(empty, fast_config());
    CHECK(abs(e.log10_value) <= Real("1e-12"));  // value 1
    CHECK(e.certified_rel_error < Real("1e-6"));
}

TEST_CASE("zero-node l2 worst case matches the direct series for the unit-weight exponential") {
    auto ek = Kernel::exponential(Real(1));
    LinearApproximation empty = weighted_interpolant(ek, {});
    ErrorEstimate e = l2_worst_case(empty, fast_config(LpNorm::two));
    // oracle: e_2^2 = sum_k 1/k! * 2/(2k+1), summed independently
    Real oracle = 0;
    Real inv_fact = 1;
    for (unsigned long k = 0; k < 60; ++k) {
        oracle += inv_fact * 2 / Real(2 * k + 1);
        inv_fact /= (k + 1);
    }
    CHECK(rel(log10_to_value(e), sqrt(oracle), Real("1e-10")));
    // frozen value of the same series
    CHECK(rel(sqrt(oracle), Real("1.71035186199049791241376942005091345144295243"), Real("1e-35")));
}

TEST_CASE("single-node gram power function closed form") {
    auto gk = Kernel::gaussian(Real(1));
    std::vector<Real> nodes = {Real(0)};
    CHECK(power_function_gram(*gk, nodes, Real(0), 60) == 0);
    for (double xd : {-0.7, 0.2, 0.9}) {
        Real x(xd);
        Real k = (*gk)(x, Real(0));
        CHECK(rel(power_function_gram(*gk, nodes, x, 60), sqrt(1 - k * k), Real("1e-45")));
    }
}

TEST_CASE("residual route and gram route agree for kernel interpolants") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    WorstCaseConfig cfg = fast_config();
    for (const auto& kernel : {Kernel::gaussian(Real(1)), Kernel::bessel(Real(1))}) {
        for (std::size_t n : {3, 6}) {
            std::vector<Real> nodes = chebyshev_nodes(n);
            LinearApproximation interp = kernel_interpolant(kernel, nodes, 60);
            for (int trial = 0; trial < 10; ++trial) {
                Real x(dist(rng));
                Real onb = pointwise_worst_case(interp, x, cfg);
                Real gram = power_function_gram(*kernel, nodes, x, 60);
                CHECK(rel(onb, gram, Real("1e-12")));
            }
        }
    }
}

TEST_CASE("lower bound witness closed form at a single zero node") {
    auto gk = Kernel::gaussian(Real(1));
    std::vector<Real> nodes = {Real(0)};
    Real w = lower_bound_witness(gk, nodes, LpNorm::sup);
    CHECK(rel(w, exp(-Real(1) / 2), Real("1e-12")));
    CHECK(lower_bound_witness(gk, nodes, LpNorm::two) > 0);
}

TEST_CASE("witness bounds every algorithm built on the same nodes") {
    auto gk = Kernel::gaussian(Real(1));
    WorstCaseConfig sup_cfg = fast_config();
    WorstCaseConfig l2_cfg = fast_config(LpNorm::two);
    for (std::size_t n : {3, 7}) {
        std::vector<Real> nodes = chebyshev_nodes(n);
        const Real w_sup = lower_bound_witness(gk, nodes, LpNorm::sup);
        const Real w_l2 = lower_bound_witness(gk, nodes, LpNorm::two);
        for (const LinearApproximation& a :
             {weighted_interpolant(gk, nodes), polynomial_interpolant(gk, nodes),
              kernel_interpolant(gk, nodes, 60)}) {
            CHECK(w_sup <= log10_to_value(sup_worst_case(a, sup_cfg)));
            CHECK(w_l2 <= log10_to_value(l2_worst_case(a, l2_cfg)));
        }
    }
}

TEST_CASE("kernel interpolant is pointwise optimal among node-based approximations") {
    auto gk = Kernel::gaussian(Real(1));
    std::vector<Real> nodes = chebyshev_nodes(6);
    LinearApproximation spline = kernel_interpolant(gk, nodes, 60);
    LinearApproximation weighted = weighted_interpolant(gk, nodes);
    WorstCaseConfig cfg = fast_config();
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Real x(dist(rng));
        CHECK(pointwise_worst_case(spline, x, cfg) <=
              pointwise_worst_case(weighted, x, cfg) * (1 + Real("1e-30")));
    }
}

TEST_CASE("error ordering: kernel interpolant <= weighted <= plain interpolation") {
    auto gk = Kernel::gaussian(Real(1));
    WorstCaseConfig cfg = fast_config();
    for (std::size_t n : {5, 9}) {
        std::vector<Real> nodes = chebyshev_nodes(n);
        Real e_spline = log10_to_value(sup_worst_case(kernel_interpolant(gk, nodes, 60), cfg));
        Real e_weighted = log10_to_value(sup_worst_case(weighted_interpolant(gk, nodes), cfg));
        Real e_plain = log10_to_value(sup_worst_case(polynomial_interpolant(gk, nodes), cfg));
        CHECK(e_spline <= e_weighted);
        CHECK(e_weighted <= e_plain);
    }
}

TEST_CASE("sup worst case decreases along nested chebyshev-extrema node sets") {
    auto gk = Kernel::gaussian(Real(1));
    WorstCaseConfig cfg = fast_config();
    Real previous = 10;
    for (std::size_t m : {2, 4, 8, 16}) {
        std::vector<Real> nodes = chebyshev_extrema(m);  // m + 1 nested points
        Real e = log10_to_value(sup_worst_case(weighted_interpolant(gk, nodes), cfg));
        CHECK(e < previous);
        previous = e;
    }
}

TEST_CASE("norm comparison inequalities for e_2") {
    auto gk = Kernel::gaussian(Real(1));
    std::vector<Real> nodes = chebyshev_nodes(5);
    LinearApproximation a = weighted_interpolant(gk, nodes);
    Real e_sup = log10_to_value(sup_worst_case(a, fast_config()));
    Real e_two = log10_to_value(l2_worst_case(a, fast_config(LpNorm::two)));
    CHECK(e_two <= e_sup * sqrt(Real(2)));
}

TEST_CASE("taylor operator worst case respects its lower-bound witness") {
    auto gk = Kernel::gaussian(Real(1));
    const Real center("0.3");
    const std::size_t n = 9;
    LinearApproximation taylor = weighted_taylor_operator(gk, center, n);
    WorstCaseConfig cfg = fast_config();
    ErrorEstimate e = sup_worst_case(taylor, cfg);
    // witness: phi (x-a)^n has Taylor image zero; expand (x-a)^n directly
    std::vector<Real> centered(n + 1, Real(0));
    centered[0] = 1;
    for (std::size_t pass = 0; pass < n; ++pass) {
        for (std::size_t i = n; i-- > 0;) {
            centered[i + 1] += centered[i];
            centered[i] *= -center;
        }
    }
    SeriesFunction witness(gk, centered);
    Real ratio = exp(log(lp_norm(witness, LpNorm::sup)) - log_series_norm(witness));
    CHECK(ratio <= log10_to_value(e) * (1 + Real("1e-10")));
}

TEST_CASE("sup worst case is deterministic across serial and parallel evaluation") {
    auto gk = Kernel::gaussian(Real(1));
    std::vector<Real> nodes = chebyshev_nodes(6);
    LinearApproximation a = weighted_interpolant(gk, nodes);
    WorstCaseConfig serial = fast_config();
    serial.parallel = false;
    WorstCaseConfig parallel = fast_config();
    parallel.parallel = true;
    CHECK(sup_worst_case(a, serial).log10_value == sup_worst_case(a, parallel).log10_value);
}

}  // TEST_SUITE
