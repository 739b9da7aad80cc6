#pragma once

#include "wpsk/sequences.hpp"

#include <memory>

namespace wpsk {

/// Weight phi on [-1,1] with certified bounds 0 < phi_min <= |phi| <= phi_max.
class WeightFunction {
public:
    enum class Kind { unit, gaussian_weight };

    static WeightFunction unit();
    static WeightFunction gaussian(const Real& epsilon);  // phi(x) = exp(-eps^2 x^2 / 2)

    Kind kind() const { return kind_; }
    bool is_unit() const { return kind_ == Kind::unit; }
    const Real& epsilon() const { return epsilon_; }
    const Real& min_value() const { return phi_min_; }
    const Real& max_value() const { return phi_max_; }

    Real operator()(const Real& x) const;

    /// Grid check of phi_min <= |phi(x)| <= phi_max over [-1,1].
    bool verify_envelope(std::size_t grid_points = 100000) const;

private:
    WeightFunction(Kind kind, Real eps, Real lo, Real hi);
    Kind kind_;
    Real epsilon_;
    Real phi_min_;
    Real phi_max_;
};

enum class KernelEvalMode { closed_form, series };

/// Weighted power series kernel K(x,y) = phi(x) phi(y) sum_k alpha_k^{-1} x^k y^k.
class Kernel {
public:
    Kernel(AlphaSequence alpha, WeightFunction phi);

    // Canonical family pairings from the closed forms.
    static std::shared_ptr<const Kernel> gaussian(const Real& epsilon);
    static std::shared_ptr<const Kernel> exponential(const Real& epsilon);
    static std::shared_ptr<const Kernel> hermite(const Real& epsilon, const Real& tau);
    static std::shared_ptr<const Kernel> bessel(const Real& epsilon);
    static std::shared_ptr<const Kernel> power(const Real& beta);

    const AlphaSequence& alpha() const { return alpha_; }
    const WeightFunction& weight() const { return phi_; }
    bool has_closed_form() const;

    Real eval_closed(const Real& x, const Real& y) const;
    Real eval_series(const Real& x, const Real& y, const Real& rel_tol) const;
    Real operator()(const Real& x, const Real& y) const;  // closed form when present

private:
    AlphaSequence alpha_;
    WeightFunction phi_;
};

Real kernel_eval(const Kernel& k, const Real& x, const Real& y, KernelEvalMode mode,
                 const Real& rel_tol = Real("1e-30"));

/// ln C_R^{2n} where C_R^{2n} = sum_{k>=n} alpha_k^{-1} (k!/(k-n)!)^2, the
/// x = 1 value of the diagonal 2n-th derivative series of the unweighted
/// kernel. Requires an (A-alpha) certificate; adaptive with a certified tail.
Real log_cr2n_exact(const AlphaSequence& alpha, std::size_t n, const Real& rel_tol = Real("1e-35"));

struct Cr2nBound {
    bool applicable = false;  // n >= m_L(lambda)
    Real log_value{0};
};

/// ln of the derivative-growth bound c_L(lambda) n^{-1/4} e^{2 sqrt(lambda n)} alpha_n^{-1} n!^2.
Cr2nBound log_cr2n_bound(const AlphaSequence& alpha, std::size_t n);

/// ln C_K^{2n} for the Gaussian kernel: eps^{2n} (2n)! / (2^n n!).
Real log_ck2n_gaussian(const Real& epsilon, std::size_t n);

}  // namespace wpsk
