#include "wpsk/quadrature.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace wpsk {

namespace {

// Legendre P_m(x) and P_m'(x) via the three-term recurrence.
void legendre_with_derivative(std::size_t m, const Real& x, Real& value, Real& derivative) {
    Real p0 = 1, p1 = x;
    if (m == 0) {
        value = p0;
        derivative = 0;
        return;
    }
    for (std::size_t j = 2; j <= m; ++j) {
        Real pj = ((2 * Real(static_cast<unsigned long>(j)) - 1) * x * p1 -
                   (Real(static_cast<unsigned long>(j)) - 1) * p0) /
                  Real(static_cast<unsigned long>(j));
        p0 = p1;
        p1 = pj;
    }
    value = p1;
    derivative = Real(static_cast<unsigned long>(m)) * (x * p1 - p0) / (x * x - 1);
}

GaussLegendreRule build_rule(std::size_t m) {
    GaussLegendreRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const Real pi = pi_value();
    const Real tol = pow(Real(10), -Real(static_cast<int>(working_digits())) + 2);
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        // Newton from the Chebyshev-type initial guess; converges in a handful of steps.
        Real x = cos(pi * (Real(static_cast<unsigned long>(i)) + Real(3) / 4) /
                     (Real(static_cast<unsigned long>(m)) + Real(1) / 2));
        Real value, derivative;
        for (int it = 0; it < 200; ++it) {
            legendre_with_derivative(m, x, value, derivative);
            Real step = value / derivative;
            x -= step;
            if (abs(step) <= tol) break;
        }
        legendre_with_derivative(m, x, value, derivative);
        Real w = 2 / ((1 - x * x) * derivative * derivative);
        rule.nodes[i] = x;
        rule.weights[i] = w;
        rule.nodes[m - 1 - i] = -x;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) {
        Real value, derivative;
        legendre_with_derivative(m, Real(0), value, derivative);
        rule.nodes[m / 2] = 0;
        rule.weights[m / 2] = 2 / (derivative * derivative);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t order) {
    static std::mutex cache_mutex;
    static std::map<std::pair<std::size_t, unsigned>, GaussLegendreRule> cache;
    const auto key = std::make_pair(order, working_digits());
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    GaussLegendreRule rule = build_rule(order);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, std::move(rule)).first->second;
}

Real integrate_doubling(const std::function<Real(const Real&)>& f, const Real& rel_tol,
                        std::size_t initial_order, std::size_t max_order) {
    Real previous = 0;
    bool have_previous = false;
    for (std::size_t order = initial_order; order <= max_order; order *= 2) {
        const GaussLegendreRule& rule = gauss_legendre(order);
        Real acc = 0;
        for (std::size_t i = 0; i < order; ++i) acc += rule.weights[i] * f(rule.nodes[i]);
        if (have_previous) {
            Real scale = (std::max)(abs(acc), abs(previous));
            if (scale == 0 || abs(acc - previous) <= rel_tol * scale) return acc;
        }
        previous = acc;
        have_previous = true;
    }
    std::ostringstream msg;
    msg << "quadrature did not converge to rel tol " << rel_tol.str(3) << " by order " << max_order;
    throw numerical_error(msg.str());
}

}  // namespace wpsk
