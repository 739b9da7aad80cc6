#pragma once

#include "wpsk/linalg.hpp"
#include "wpsk/rkhs.hpp"

#include <memory>
#include <optional>

namespace wpsk {

/// Gram factorization failed at the requested software precision.
class precision_error : public std::runtime_error {
public:
    precision_error(const std::string& what, Real condition_estimate)
        : std::runtime_error(what), condition_estimate_(std::move(condition_estimate)) {}
    const Real& condition_estimate() const { return condition_estimate_; }

private:
    Real condition_estimate_;
};

enum class ApproximationKind { polynomial, weighted_polynomial, kernel_interpolant, weighted_taylor };

const char* approximation_kind_name(ApproximationKind k);

/// Linear approximation A f = sum_k f(x_k) psi_k for the node-based kinds; the
/// weighted Taylor kind uses derivative data at a single center instead.
/// Immutable after construction; concurrent evaluation is safe.
class LinearApproximation {
public:
    ApproximationKind kind() const { return kind_; }
    const std::vector<Real>& nodes() const { return nodes_; }
    std::size_t size() const { return order_; }  // n
    const Kernel& kernel() const { return *kernel_; }
    const std::shared_ptr<const Kernel>& kernel_ptr() const { return kernel_; }
    const Real& taylor_center() const;

    /// psi_k(x) for all k (node-based kinds only).
    std::vector<Real> weights_at(const Real& x) const;
    Real weight_at(const Real& x, std::size_t k) const;

    /// Product-form Lagrange weights; independent cross-check of the barycentric route.
    std::vector<Real> weights_at_direct(const Real& x) const;

    Real apply(const SeriesFunction& f, const Real& x) const;

    /// Smallest k for which the residual r_k = phi x^k - A[phi t^k] can be nonzero.
    std::size_t exact_reproduction_order() const;

    friend class ResidualStream;
    friend LinearApproximation polynomial_interpolant(std::shared_ptr<const Kernel>, std::vector<Real>);
    friend LinearApproximation weighted_interpolant(std::shared_ptr<const Kernel>, std::vector<Real>);
    friend LinearApproximation kernel_interpolant(std::shared_ptr<const Kernel>, std::vector<Real>,
                                                  unsigned);
    friend LinearApproximation weighted_taylor_operator(std::shared_ptr<const Kernel>, const Real&,
                                                        std::size_t);

private:
    LinearApproximation() = default;

    std::vector<Real> lagrange_weights_barycentric(const Real& x) const;
    std::vector<Real> kernel_weights(const Real& x) const;

    ApproximationKind kind_ = ApproximationKind::polynomial;
    std::shared_ptr<const Kernel> kernel_;
    std::vector<Real> nodes_;
    std::vector<Real> bary_weights_;
    std::vector<Real> phi_at_nodes_;
    std::size_t order_ = 0;
    Real taylor_center_{0};
    std::optional<Matrix> gram_;
    std::optional<Matrix> gram_lower_;
    unsigned gram_digits_ = 0;
};

/// S_n: the plain Lagrange interpolant, evaluated in barycentric (second) form.
LinearApproximation polynomial_interpolant(std::shared_ptr<const Kernel> kernel,
                                           std::vector<Real> nodes);

/// S_n^phi: psi_k(x) = phi(x)/phi(x_k) * Lagrange_k(x); reproduces phi * P for
/// deg P <= n-1 exactly.
LinearApproximation weighted_interpolant(std::shared_ptr<const Kernel> kernel,
                                         std::vector<Real> nodes);

/// I_n: the minimum-norm interpolant from span{K(x_k, .)}; the Gram system is
/// factorized once at the given software precision (>= 30 digits).
LinearApproximation kernel_interpolant(std::shared_ptr<const Kernel> kernel,
                                       std::vector<Real> nodes, unsigned precision_digits = 60);

/// A_n^{d,a}: f = phi g |-> phi * (Taylor polynomial of g of order n-1 at a).
LinearApproximation weighted_taylor_operator(std::shared_ptr<const Kernel> kernel, const Real& a,
                                             std::size_t order);

/// Applies the weighted Taylor approximation to a finite-support f and returns
/// the result re-expanded in the monomial system.
SeriesFunction weighted_taylor(std::shared_ptr<const Kernel> kernel, const Real& a,
                               std::size_t order, const SeriesFunction& f);

/// Streams the coefficient residuals r_k(x) = phi(x) x^k - (A[phi t^k])(x) for
/// k = exact_reproduction_order(), ... with the envelope |r_k| <= envelope * growth^k.
class ResidualStream {
public:
    ResidualStream(const LinearApproximation& a, const Real& x);

    std::size_t index() const { return k_; }  // k of the next residual
    Real next();
    const Real& envelope() const { return envelope_; }
    const Real& growth() const { return growth_; }

private:
    const LinearApproximation& approx_;
    Real x_;
    std::size_t k_ = 0;
    Real envelope_{0};
    Real growth_{1};
    // node kinds
    std::vector<Real> psi_phi_;
    std::vector<Real> node_powers_;
    Real x_power_{1};
    Real phi_x_{1};
    // taylor kind
    std::vector<Real> dx_powers_;   // (x-a)^j
    std::vector<Real> binomials_;   // C(k, j) for j = 0..k
    Real center_power_scale_{1};
};

}  // namespace wpsk
