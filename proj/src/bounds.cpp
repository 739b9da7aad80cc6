#include "wpsk/bounds.hpp"

#include "wpsk/quadrature.hpp"

#include <stdexcept>

namespace wpsk {

namespace {

Real require_lambda(const AlphaSequence& alpha) {
    if (alpha.family() == Family::power)
        throw std::domain_error("bound evaluators require an (A-alpha) family; power is excluded");
    return alpha.lambda();
}

Real log10_of(const Real& ln_value) { return log10_from_ln(ln_value); }

}  // namespace

Real mL(const Real& lambda) {
    if (lambda <= 0) throw std::domain_error("mL: lambda must be positive");
    Real half = 1 + lambda / 2;
    return (std::max)({5 * lambda, lambda * half * half, 9 / lambda});
}

Real log_cL(const Real& lambda) {
    if (lambda <= 0) throw std::domain_error("log_cL: lambda must be positive");
    const Real pi = pi_value();
    Real quarter_root = pow(lambda, Real(1) / 4);
    Real bracket = 3 + sqrt(pi / euler_value()) + 2 / (sqrt(pi) * quarter_root) +
                   Real(7) / (16 * sqrt(lambda)) + sqrt(lambda) * (2 + lambda);
    return -3 * lambda / 2 + 2 * sqrt(lambda) - log(2 * sqrt(pi)) - log(quarter_root) + log(bracket);
}

LemmaTauConstants lemma_tau_constants(const Real& lambda) {
    return {Real(1) / 4, exp(lambda * lambda / 16) / 2};
}

LemmaEllConstants lemma_ell_constants(const Real& lambda) {
    const Real pi = pi_value();
    Real ell1 = 1 / (2 * pi * exp(Real(2)));
    Real ell2 = 9 * exp(Real(6)) / (2 * pi) * (1 + lambda / 4) * exp(lambda * lambda / 16);
    return {ell1, ell2};
}

TheoremConstants theorem_constants(const Real& lambda, const Real& phi_min, const Real& phi_max,
                                   LpNorm p) {
    if (lambda <= 0 || phi_min <= 0 || phi_max <= 0)
        throw std::domain_error("theorem_constants: lambda, phi_min, phi_max must be positive");
    TheoremConstants c;
    Real damp = exp(-lambda * lambda / 32);
    Real sqrt_cL = exp(log_cL(lambda) / 2);
    if (p == LpNorm::sup) {
        c.c1 = sqrt(2 / (1 + lambda)) * damp * phi_min;
        c.c2 = 2 * sqrt_cL * phi_max;
    } else {
        const Real pi = pi_value();
        c.c1 = 2 * sqrt(2 * pi) / (3 * exp(Real(3)) * sqrt(4 + lambda)) * damp * phi_min;
        c.c2 = 2 * sqrt(Real(2)) * sqrt_cL * phi_max;
    }
    return c;
}

TheoremBounds min_error_bounds(const AlphaSequence& alpha, const WeightFunction& phi, LpNorm p,
                               std::size_t n) {
    const Real lambda = require_lambda(alpha);
    TheoremBounds b;
    b.theorem = p == LpNorm::sup ? TheoremKind::min_unif : TheoremKind::min_l2;
    b.n = n;
    b.applicable = Real(static_cast<unsigned long>(n)) >= mL(lambda);
    TheoremConstants c = theorem_constants(lambda, phi.min_value(), phi.max_value(), p);
    Real nn(static_cast<unsigned long>(n));
    Real shared = -nn * ln2_value() - alpha.log_alpha(n) / 2;
    b.log10_lower = log10_of(log(c.c1) + shared);
    b.log10_upper = log10_of(log(c.c2) - log(nn) / 8 + sqrt(lambda * nn) + shared);
    return b;
}

UpperBound fixed_nodes_upper(const AlphaSequence& alpha, const WeightFunction& phi, LpNorm p,
                             std::size_t n) {
    const Real lambda = require_lambda(alpha);
    UpperBound u;
    u.applicable = Real(static_cast<unsigned long>(n)) >= mL(lambda);
    TheoremConstants c = theorem_constants(lambda, phi.min_value(), phi.max_value(), p);
    Real nn(static_cast<unsigned long>(n));
    Real n_exponent = p == LpNorm::sup ? Real(1) / 8 : Real(1) / 8 + Real(1) / 2;
    u.log10_value = log10_of(log(c.c2 / 2) - n_exponent * log(nn) + sqrt(lambda * nn) +
                             nn * ln2_value() - alpha.log_alpha(n) / 2);
    return u;
}

TheoremBounds taylor_bounds(const AlphaSequence& alpha, const WeightFunction& phi, const Real& a,
                            std::size_t n) {
    if (abs(a) >= 1) throw std::domain_error("taylor_bounds: center must lie in (-1,1)");
    const Real lambda = require_lambda(alpha);
    TheoremBounds b;
    b.theorem = TheoremKind::taylor_unif;
    b.n = n;
    b.applicable = Real(static_cast<unsigned long>(n)) >= mL(lambda);
    Real nn(static_cast<unsigned long>(n));
    Real half_log_alpha = alpha.log_alpha(n) / 2;
    Real lower_rate = log(1 + abs(a)) - log(1 + lambda * a * a) / 2;
    b.log10_lower = log10_of(log(phi.min_value()) + nn * lower_rate - half_log_alpha);
    b.log10_upper = log10_of(log(phi.max_value()) + log_cL(lambda) / 2 - log(nn) / 8 +
                             sqrt(lambda * nn) + nn * log(1 + abs(a)) - half_log_alpha);
    return b;
}

namespace {

struct CorollaryPieces {
    Real lambda;
    Real phi_min;
    Real log_rate;       // ln of the per-n decay base, e.g. ln(eps/2) for gaussian
    Real log_factorial_scale;  // multiple of ln n! subtracted after halving, 1/2 or 1
};

CorollaryPieces corollary_pieces(const FamilyParams& p) {
    CorollaryPieces out;
    switch (p.family) {
        case Family::gaussian:
            out.lambda = p.epsilon * p.epsilon;
            out.phi_min = exp(-p.epsilon * p.epsilon / 2);
            out.log_rate = log(p.epsilon / 2);
            out.log_factorial_scale = Real(1) / 2;
            return out;
        case Family::exponential:
            out.lambda = p.epsilon;
            out.phi_min = 1;
            out.log_rate = log(p.epsilon) / 2 - ln2_value();
            out.log_factorial_scale = Real(1) / 2;
            return out;
        case Family::hermite:
            out.lambda = p.tau * p.tau * p.epsilon * p.epsilon;
            out.phi_min = exp(-p.epsilon * p.epsilon / 2);
            out.log_rate = log(p.tau * p.epsilon / 2);
            out.log_factorial_scale = Real(1) / 2;
            return out;
        case Family::bessel:
            out.lambda = p.epsilon;
            out.phi_min = 1;
            out.log_rate = log(p.epsilon) / 2 - ln2_value();
            out.log_factorial_scale = 1;
            return out;
        case Family::power:
            break;
    }
    throw std::domain_error("corollary bounds exist only for the four closed-form families");
}

}  // namespace

TheoremBounds corollary_min_bounds(const FamilyParams& params, LpNorm p, std::size_t n) {
    CorollaryPieces pieces = corollary_pieces(params);
    TheoremBounds b;
    b.theorem = TheoremKind::corollary;
    b.n = n;
    b.applicable = Real(static_cast<unsigned long>(n)) >= mL(pieces.lambda);
    TheoremConstants c = theorem_constants(pieces.lambda, pieces.phi_min, Real(1), p);
    Real nn(static_cast<unsigned long>(n));
    Real shared = nn * pieces.log_rate - pieces.log_factorial_scale * log_factorial(n);
    b.log10_lower = log10_of(log(c.c1) + shared);
    b.log10_upper = log10_of(log(c.c2) - log(nn) / 8 + sqrt(pieces.lambda * nn) + shared);
    return b;
}

UpperBound corollary_fixed_nodes_upper(const FamilyParams& params, LpNorm p, std::size_t n) {
    CorollaryPieces pieces = corollary_pieces(params);
    UpperBound u;
    u.applicable = Real(static_cast<unsigned long>(n)) >= mL(pieces.lambda);
    TheoremConstants c = theorem_constants(pieces.lambda, pieces.phi_min, Real(1), p);
    Real nn(static_cast<unsigned long>(n));
    Real n_exponent = p == LpNorm::sup ? Real(1) / 8 : Real(1) / 8 + Real(1) / 2;
    // (2 eps)^n style base: the minimal-rate base times 4^n
    Real shared = nn * (pieces.log_rate + 2 * ln2_value()) - pieces.log_factorial_scale * log_factorial(n);
    u.log10_value =
        log10_of(log(c.c2 / 2) - n_exponent * log(nn) + sqrt(pieces.lambda * nn) + shared);
    return u;
}

Real multivariate_witness(const Real& epsilon, std::size_t n, LpNorm p) {
    if (epsilon <= 0) throw std::domain_error("multivariate_witness: epsilon must be positive");
    if (n == 0) throw std::domain_error("multivariate_witness: n must be >= 1");
    // n distinct points on the unit circle; f vanishes there by construction,
    // so the returned ratio does not depend on the placement (or on n).
    const Real pi = pi_value();
    WeightFunction phi = WeightFunction::gaussian(epsilon);
    auto f = [&](const Real& x, const Real& y) {
        return phi(x) * phi(y) * (x * x + y * y - 1);
    };
    const Real vanish_tol = pow(Real(10), -Real(static_cast<int>(working_digits())) + 5);
    for (std::size_t k = 0; k < n; ++k) {
        Real theta = 2 * pi * Real(static_cast<unsigned long>(k)) / Real(static_cast<unsigned long>(n));
        Real cx = cos(theta), cy = sin(theta);
        if (abs(f(cx, cy)) > vanish_tol)
            throw std::logic_error("multivariate witness: f does not vanish at a circle node");
    }
    // tensor norm: coefficients (2,0) -> 1, (0,2) -> 1, (0,0) -> -1
    AlphaSequence alpha = AlphaSequence::gaussian(epsilon);
    Real alpha2 = exp(alpha.log_alpha(2));
    Real norm_k = sqrt(2 * alpha2 + 1);

    Real norm_p;
    if (p == LpNorm::sup) {
        // reduce over the radial profile per x: maximize |f| on a 2-D grid
        MaxResult r = maximize_on_biunit(
            [&](const Real& x) {
                MaxResult inner = maximize_on_biunit(
                    [&](const Real& y) {
                        Real v = f(x, y);
                        return v * v;
                    },
                    256);
                return inner.value;
            },
            256);
        norm_p = sqrt(r.value);
    } else {
        Real value = integrate_doubling(
            [&](const Real& x) {
                return integrate_doubling(
                    [&](const Real& y) {
                        Real v = f(x, y);
                        return v * v;
                    },
                    Real("1e-14"), 32, 1024);
            },
            Real("1e-14"), 32, 1024);
        norm_p = sqrt(value);
    }
    return norm_p / norm_k;
}

}  // namespace wpsk
