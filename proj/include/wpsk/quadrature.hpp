#pragma once

#include "wpsk/real.hpp"

#include <cstddef>
#include <vector>

namespace wpsk {

struct GaussLegendreRule {
    std::vector<Real> nodes;    // on [-1, 1], descending
    std::vector<Real> weights;
};

/// Gauss-Legendre rule of the given order at the current working precision.
/// Rules are cached per (order, precision); safe for concurrent use.
const GaussLegendreRule& gauss_legendre(std::size_t order);

/// Integrates f over [-1,1] with order doubling until two successive values
/// agree to rel_tol. Throws numerical_error on non-convergence.
Real integrate_doubling(const std::function<Real(const Real&)>& f, const Real& rel_tol,
                        std::size_t initial_order = 32, std::size_t max_order = 8192);

/// Raised when an adaptive numerical procedure fails to converge.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wpsk
