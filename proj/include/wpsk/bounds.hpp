#pragma once

#include "wpsk/kernels.hpp"
#include "wpsk/polynomials.hpp"

namespace wpsk {

/// Threshold m_L(lambda) = max{5 lambda, lambda (1+lambda/2)^2, 9/lambda}
/// gating every derivative-growth bound.
Real mL(const Real& lambda);

/// ln c_L(lambda) = ln[ e^{-(3/2) lambda + 2 sqrt(lambda)} / (2 sqrt(pi) lambda^{1/4}) * bracket ].
Real log_cL(const Real& lambda);

struct LemmaTauConstants {
    Real tau1;  // 1/4
    Real tau2;  // (1/2) e^{lambda^2/16}
};
LemmaTauConstants lemma_tau_constants(const Real& lambda);

struct LemmaEllConstants {
    Real ell1;  // 1/(2 pi e^2)
    Real ell2;  // (9 e^6 / 2 pi)(1 + lambda/4) e^{lambda^2/16}
};
LemmaEllConstants lemma_ell_constants(const Real& lambda);

struct TheoremConstants {
    Real c1;  // lower-bound constant
    Real c2;  // upper-bound constant
};

/// c_{1,inf} = sqrt(2/(1+lambda)) e^{-lambda^2/32} phi_min, c_{2,inf} = 2 sqrt(c_L) phi_max;
/// c_{1,2} = 2 sqrt(2 pi)/(3 e^3 sqrt(4+lambda)) e^{-lambda^2/32} phi_min, c_{2,2} = 2 sqrt(2 c_L) phi_max.
TheoremConstants theorem_constants(const Real& lambda, const Real& phi_min, const Real& phi_max,
                                   LpNorm p);

enum class TheoremKind { min_unif, any_unif, taylor_unif, min_l2, any_l2, corollary };

struct TheoremBounds {
    TheoremKind theorem = TheoremKind::min_unif;
    std::size_t n = 0;
    bool applicable = false;  // n >= m_L(lambda)
    Real log10_lower{0};
    Real log10_upper{0};
};

/// nth-minimal-error sandwich: c1 2^{-n} alpha_n^{-1/2} <= e_p^min(n)
/// <= c2 n^{-1/8} e^{sqrt(lambda n)} 2^{-n} alpha_n^{-1/2}.
TheoremBounds min_error_bounds(const AlphaSequence& alpha, const WeightFunction& phi, LpNorm p,
                               std::size_t n);

/// Arbitrary-node upper bound: (c2/2) n^{-1/8 - [p==2]/2} e^{sqrt(lambda n)} 2^{n} alpha_n^{-1/2}.
struct UpperBound {
    bool applicable = false;
    Real log10_value{0};
};
UpperBound fixed_nodes_upper(const AlphaSequence& alpha, const WeightFunction& phi, LpNorm p,
                             std::size_t n);

/// Weighted Taylor sandwich at center a:
/// phi_min ((1+|a|)/sqrt(1+lambda a^2))^n alpha_n^{-1/2} <= e_inf(A_n^{d,a})
/// <= phi_max sqrt(c_L) n^{-1/8} e^{sqrt(lambda n)} (1+|a|)^n alpha_n^{-1/2}.
TheoremBounds taylor_bounds(const AlphaSequence& alpha, const WeightFunction& phi, const Real& a,
                            std::size_t n);

struct FamilyParams {
    Family family = Family::gaussian;
    Real epsilon{1};
    Real tau{1};
};

/// Closed-form per-family bounds; must agree with the general theorem applied
/// to the family's (alpha, phi) to high relative accuracy.
TheoremBounds corollary_min_bounds(const FamilyParams& params, LpNorm p, std::size_t n);
UpperBound corollary_fixed_nodes_upper(const FamilyParams& params, LpNorm p, std::size_t n);

/// d = 2 witness: f(x,y) = phi(x) phi(y) (x^2 + y^2 - 1) vanishes on the unit
/// circle, so ||f||_p / ||f||_{K_2} bounds e_p(A_n) below for any node count n.
Real multivariate_witness(const Real& epsilon, std::size_t n, LpNorm p);

}  // namespace wpsk
