#include "wpsk/approximators.hpp"

#include "wpsk/quadrature.hpp"

#include <sstream>
#include <stdexcept>

namespace wpsk {

namespace {

void require_distinct(const std::vector<Real>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw std::domain_error("interpolation nodes must be pairwise distinct");
}

std::vector<Real> barycentric_weights(const std::vector<Real>& nodes) {
    std::vector<Real> w(nodes.size(), Real(1));
    for (std::size_t j = 0; j < nodes.size(); ++j)
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (i != j) w[j] /= (nodes[j] - nodes[i]);
    return w;
}

/// One step of iterative refinement with the residual accumulated at twice the
/// factorization precision; keeps cardinality tight even for ill-conditioned Gram systems.
std::vector<Real> refined_cholesky_solve(const Matrix& gram, const Matrix& lower,
                                         std::span<const Real> rhs, unsigned digits) {
    std::vector<Real> u = cholesky_solve(lower, rhs);
    std::vector<Real> residual(u.size());
    {
        PrecisionGuard guard(2 * digits);
        for (std::size_t i = 0; i < u.size(); ++i) {
            Real r = rhs[i];
            for (std::size_t j = 0; j < u.size(); ++j) r -= gram.at(i, j) * u[j];
            residual[i] = r;
        }
    }
    std::vector<Real> correction = cholesky_solve(lower, residual);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += correction[i];
    return u;
}

}  // namespace

const char* approximation_kind_name(ApproximationKind k) {
    switch (k) {
        case ApproximationKind::polynomial: return "poly";
        case ApproximationKind::weighted_polynomial: return "weighted_poly";
        case ApproximationKind::kernel_interpolant: return "kernel_interp";
        case ApproximationKind::weighted_taylor: return "weighted_taylor";
    }
    return "?";
}

const Real& LinearApproximation::taylor_center() const {
    if (kind_ != ApproximationKind::weighted_taylor)
        throw std::domain_error("taylor_center: not a weighted Taylor approximation");
    return taylor_center_;
}

std::vector<Real> LinearApproximation::lagrange_weights_barycentric(const Real& x) const {
    const std::size_t n = nodes_.size();
    std::vector<Real> out(n, Real(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (x == nodes_[j]) {
            out[j] = 1;
            return out;
        }
    }
    Real denom = 0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = bary_weights_[j] / (x - nodes_[j]);
        denom += out[j];
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= denom;
    return out;
}

std::vector<Real> LinearApproximation::kernel_weights(const Real& x) const {
    PrecisionGuard guard(gram_digits_);
    const std::size_t n = nodes_.size();
    std::vector<Real> kx(n);
    for (std::size_t i = 0; i < n; ++i) kx[i] = (*kernel_)(nodes_[i], x);
    return refined_cholesky_solve(*gram_, *gram_lower_, kx, gram_digits_);
}

std::vector<Real> LinearApproximation::weights_at(const Real& x) const {
    switch (kind_) {
        case ApproximationKind::polynomial:
            return lagrange_weights_barycentric(x);
        case ApproximationKind::weighted_polynomial: {
            std::vector<Real> w = lagrange_weights_barycentric(x);
            const Real phi_x = kernel_->weight()(x);
            for (std::size_t j = 0; j < w.size(); ++j) w[j] *= phi_x / phi_at_nodes_[j];
            return w;
        }
        case ApproximationKind::kernel_interpolant:
            return kernel_weights(x);
        case ApproximationKind::weighted_taylor:
            throw std::domain_error("weights_at: weighted Taylor uses derivative information");
    }
    throw std::logic_error("unknown approximation kind");
}

Real LinearApproximation::weight_at(const Real& x, std::size_t k) const { return weights_at(x)[k]; }

std::vector<Real> LinearApproximation::weights_at_direct(const Real& x) const {
    const std::size_t n = nodes_.size();
    std::vector<Real> out(n, Real(1));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) out[j] *= (x - nodes_[i]) / (nodes_[j] - nodes_[i]);
    if (kind_ == ApproximationKind::weighted_polynomial) {
        const Real phi_x = kernel_->weight()(x);
        for (std::size_t j = 0; j < n; ++j) out[j] *= phi_x / phi_at_nodes_[j];
    }
    return out;
}

Real LinearApproximation::apply(const SeriesFunction& f, const Real& x) const {
    if (kind_ == ApproximationKind::weighted_taylor)
        return weighted_taylor(kernel_, taylor_center_, order_, f)(x);
    std::vector<Real> psi = weights_at(x);
    Real acc = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) acc += f(nodes_[k]) * psi[k];
    return acc;
}

std::size_t LinearApproximation::exact_reproduction_order() const {
    switch (kind_) {
        case ApproximationKind::weighted_polynomial:
        case ApproximationKind::weighted_taylor:
            return order_;
        case ApproximationKind::polynomial:
            return kernel_->weight().is_unit() ? order_ : 0;
        case ApproximationKind::kernel_interpolant:
            return 0;
    }
    return 0;
}

LinearApproximation polynomial_interpolant(std::shared_ptr<const Kernel> kernel,
                                           std::vector<Real> nodes) {
    require_distinct(nodes);
    LinearApproximation a;
    a.kind_ = ApproximationKind::polynomial;
    a.kernel_ = std::move(kernel);
    a.order_ = nodes.size();
    a.bary_weights_ = barycentric_weights(nodes);
    a.phi_at_nodes_.reserve(nodes.size());
    for (const Real& x : nodes) a.phi_at_nodes_.push_back(a.kernel_->weight()(x));
    a.nodes_ = std::move(nodes);
    return a;
}

LinearApproximation weighted_interpolant(std::shared_ptr<const Kernel> kernel,
                                         std::vector<Real> nodes) {
    LinearApproximation a = polynomial_interpolant(std::move(kernel), std::move(nodes));
    a.kind_ = ApproximationKind::weighted_polynomial;
    return a;
}

LinearApproximation kernel_interpolant(std::shared_ptr<const Kernel> kernel,
                                       std::vector<Real> nodes, unsigned precision_digits) {
    if (precision_digits < 30)
        throw std::domain_error("kernel_interpolant: precision_digits must be >= 30");
    require_distinct(nodes);
    LinearApproximation a;
    a.kind_ = ApproximationKind::kernel_interpolant;
    a.kernel_ = std::move(kernel);
    a.order_ = nodes.size();
    a.gram_digits_ = precision_digits;
    a.phi_at_nodes_.reserve(nodes.size());
    for (const Real& x : nodes) a.phi_at_nodes_.push_back(a.kernel_->weight()(x));
    a.nodes_ = std::move(nodes);

    PrecisionGuard guard(precision_digits);
    const std::size_t n = a.nodes_.size();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram.at(i, j) = (*a.kernel_)(a.nodes_[i], a.nodes_[j]);
    auto lower = cholesky(gram);
    if (!lower) {
        std::ostringstream msg;
        msg << "Gram factorization failed at " << precision_digits
            << " digits (condition estimate >= 1e" << 2 * precision_digits << ") for n = " << n;
        throw precision_error(msg.str(), pow(Real(10), 2 * static_cast<int>(precision_digits)));
    }
    a.gram_ = std::move(gram);
    a.gram_lower_ = std::move(*lower);

    // cardinality psi_k(x_j) = delta_kj
    const Real tol = pow(Real(10), -(static_cast<int>(precision_digits) - 10));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Real> psi = a.kernel_weights(a.nodes_[j]);
        for (std::size_t i = 0; i < n; ++i) {
            Real expected = i == j ? 1 : 0;
            if (abs(psi[i] - expected) > tol)
                throw precision_error("kernel interpolant cardinality check failed",
                                      cholesky_condition_estimate(*a.gram_lower_));
        }
    }
    return a;
}

LinearApproximation weighted_taylor_operator(std::shared_ptr<const Kernel> kernel, const Real& a,
                                             std::size_t order) {
    if (abs(a) >= 1) throw std::domain_error("weighted Taylor center must lie in (-1,1)");
    LinearApproximation approx;
    approx.kind_ = ApproximationKind::weighted_taylor;
    approx.kernel_ = std::move(kernel);
    approx.order_ = order;
    approx.taylor_center_ = a;
    approx.nodes_ = {a};
    return approx;
}

SeriesFunction weighted_taylor(std::shared_ptr<const Kernel> kernel, const Real& a,
                               std::size_t order, const SeriesFunction& f) {
    if (abs(a) >= 1) throw std::domain_error("weighted Taylor center must lie in (-1,1)");
    // Taylor shift of the polynomial part: t_j = g^{(j)}(a)/j! by repeated
    // synthetic division.
    std::vector<Real> b = f.coefficients();
    const std::size_t m = b.size();
    for (std::size_t j = 0; j + 1 < m; ++j)
        for (std::size_t i = m - 1; i-- > j;) b[i] += a * b[i + 1];
    // rebuild sum_{j < order} t_j (x-a)^j in the monomial basis
    std::vector<Real> poly;  // Horner from the top coefficient
    const std::size_t kept = (std::min)(order, m);
    if (kept == 0) return SeriesFunction(std::move(kernel), {});
    poly = {b[kept - 1]};
    for (std::size_t j = kept - 1; j-- > 0;) {
        std::vector<Real> next(poly.size() + 1, Real(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= a * poly[i];
        }
        next[0] += b[j];
        poly = std::move(next);
    }
    return SeriesFunction(std::move(kernel), std::move(poly));
}

ResidualStream::ResidualStream(const LinearApproximation& a, const Real& x) : approx_(a), x_(x) {
    k_ = a.exact_reproduction_order();
    phi_x_ = a.kernel().weight()(x);
    growth_ = 1;
    if (a.kind() == ApproximationKind::weighted_taylor) {
        const Real& c = a.taylor_center_;
        growth_ = 1 + 2 * abs(c);
        envelope_ = a.kernel().weight().max_value();
        dx_powers_ = {Real(1)};
        binomials_.assign(k_ + 1, Real(0));
        binomials_[0] = 1;
        for (std::size_t row = 1; row <= k_; ++row)
            for (std::size_t j = row; j-- > 0;) binomials_[j + 1] += binomials_[j];
        x_power_ = 1;  // unused for taylor
    } else {
        psi_phi_ = a.weights_at(x);
        envelope_ = a.kernel().weight().max_value();
        for (std::size_t j = 0; j < psi_phi_.size(); ++j) {
            psi_phi_[j] *= a.phi_at_nodes_[j];
            envelope_ += abs(psi_phi_[j]);
        }
        node_powers_.assign(a.nodes().size(), Real(1));
        for (std::size_t j = 0; j < node_powers_.size(); ++j)
            node_powers_[j] = pow(a.nodes()[j], static_cast<unsigned long>(k_));
        x_power_ = pow(x_, static_cast<unsigned long>(k_));
    }
}

Real ResidualStream::next() {
    if (approx_.kind() == ApproximationKind::weighted_taylor) {
        const Real& a = approx_.taylor_center_;
        while (dx_powers_.size() <= k_) dx_powers_.push_back(dx_powers_.back() * (x_ - a));
        Real s = 0;
        Real a_power = 1;  // a^{k-j}, from j = k downwards
        for (std::size_t j = k_ + 1; j-- > approx_.size();) {
            s += binomials_[j] * a_power * dx_powers_[j];
            a_power *= a;
        }
        // advance the binomial row to k+1
        binomials_.push_back(Real(0));
        for (std::size_t j = binomials_.size() - 1; j-- > 0;) binomials_[j + 1] += binomials_[j];
        ++k_;
        return phi_x_ * s;
    }
    Real s = phi_x_ * x_power_;
    for (std::size_t j = 0; j < psi_phi_.size(); ++j) s -= psi_phi_[j] * node_powers_[j];
    x_power_ *= x_;
    for (std::size_t j = 0; j < node_powers_.size(); ++j) node_powers_[j] *= approx_.nodes()[j];
    ++k_;
    return s;
}

}  // namespace wpsk
