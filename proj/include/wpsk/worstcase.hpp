#pragma once

#include "wpsk/approximators.hpp"

namespace wpsk {

struct WorstCaseConfig {
    Real truncation_tol{Real("1e-30")};
    std::size_t grid_size = 4096;
    unsigned precision_digits = 60;
    LpNorm norm = LpNorm::sup;
    Real quad_rel_tol{Real("1e-12")};
    Real eigen_rel_tol{Real("1e-13")};
    bool parallel = true;
};

enum class ErrorMethod { onb_residual, gram_formula, witness };

struct ErrorEstimate {
    Real log10_value{0};
    Real certified_rel_error{0};
    ErrorMethod method = ErrorMethod::onb_residual;
};

/// Pointwise worst case of A at x over the unit ball of H(K):
/// sqrt(sum_k alpha_k^{-1} r_k(x)^2) with a certified series tail.
Real pointwise_worst_case(const LinearApproximation& a, const Real& x, const WorstCaseConfig& cfg);

/// Power function sqrt(K(x,x) - k(x)^T G^{-1} k(x)) in software precision;
/// independent cross-check of the residual route for kernel interpolants.
Real power_function_gram(const Kernel& kernel, std::span<const Real> nodes, const Real& x,
                         unsigned precision_digits);

/// e_inf(A): maximum of the pointwise worst case over the refinement grid.
ErrorEstimate sup_worst_case(const LinearApproximation& a, const WorstCaseConfig& cfg);

/// e_2(A): largest singular value of the residual operator, via the matrix
/// M_kl = int r_k r_l / sqrt(alpha_k alpha_l) over the truncated index range
/// with order-doubling quadrature.
ErrorEstimate l2_worst_case(const LinearApproximation& a, const WorstCaseConfig& cfg);

ErrorEstimate worst_case_error(const LinearApproximation& a, const WorstCaseConfig& cfg);

/// ||phi * node_polynomial||_p / ||phi * node_polynomial||_K: a lower bound on
/// e_p(A) for every A sampling at these nodes.
Real lower_bound_witness(const std::shared_ptr<const Kernel>& kernel, std::span<const Real> nodes,
                         LpNorm p);

}  // namespace wpsk
