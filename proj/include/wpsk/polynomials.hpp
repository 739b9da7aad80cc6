#pragma once

#include "wpsk/real.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wpsk {

enum class LpNorm { sup, two };

/// Dense polynomial in the monomial basis, coefficients a_0..a_n.
/// Trailing zero coefficients are trimmed so degree() = size - 1 except for the
/// zero polynomial.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Real> coefficients);

    bool is_zero() const { return coefficients_.empty(); }
    std::size_t degree() const { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }
    const std::vector<Real>& coefficients() const { return coefficients_; }
    Real coefficient(std::size_t k) const;

    Real operator()(const Real& x) const;  // Horner
    Polynomial derivative(std::size_t order = 1) const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Real& c) const;

private:
    std::vector<Real> coefficients_;
};

/// Coefficients, roots and extremal points of the Chebyshev polynomial T_n.
struct ChebyshevData {
    std::size_t n = 0;
    std::vector<Real> coefficients;  // t_{n, n-2k} for k = 0..floor(n/2)
    std::vector<Real> nodes;         // roots, strictly decreasing, inside (-1,1)
    std::vector<Real> extrema;       // cos(pi k/n), k = 0..n (includes +-1)

    Polynomial polynomial() const;   // dense monomial form
};

/// Closed-formula Chebyshev data (coefficients in log-magnitude + sign).
ChebyshevData chebyshev(std::size_t n);

/// Three-term recurrence T_{j+1} = 2x T_j - T_{j-1}; independent cross-check route.
std::vector<Real> chebyshev_coefficients_recurrence(std::size_t n);

std::vector<Real> chebyshev_nodes(std::size_t n);
std::vector<Real> chebyshev_extrema(std::size_t n);

struct MarkovReport {
    bool applicable = false;  // false when the sup-norm precondition fails numerically
    bool holds = false;
    std::size_t worst_pair = 0;   // k index of the smallest margin
    Real min_margin{0};           // |t_{n,n-2k}| - (|a_{n-2k}| + |a_{n-2k-1}|) at worst pair
};

/// Pairwise coefficient envelope |a_{n-2k}| + |a_{n-2k-1}| <= |t_{n,n-2k}| for a
/// polynomial with |P| <= 1 at the Chebyshev extrema (checked numerically).
MarkovReport markov_envelope_check(const Polynomial& p);

/// l_{n,k}, including the sqrt(k + 1/2) factor; (-1)!! = 1 for k = 0.
Real labelle_constant(std::size_t n, std::size_t k);
Real log_labelle_constant(std::size_t n, std::size_t k);

struct LabelleReport {
    bool holds = false;
    std::size_t worst_index = 0;
    Real min_margin{0};  // l_{n,k} ||P||_2 - |a_k| at the worst index
};

/// |a_k| <= l_{n,k} ||P||_2 for all k, with the L2 norm formed from exact
/// monomial cross-integrals.
LabelleReport labelle_check(const Polynomial& p);

/// L_n(-x) = sum_{k<=n} C(n,k) x^k / k!; all terms positive.
Real laguerre(std::size_t n, const Real& x);

/// Effective Laguerre asymptotics: L_n(-x) <= c~_L(x) n^{-1/4} e^{2 sqrt(x n)}
/// for n >= m~_L(x) = max{5x, x(1+x/2)^2, 9/x}.
Real laguerre_m_threshold(const Real& x);
Real log_laguerre_c(const Real& x);

struct LaguerreBound {
    bool applicable = false;
    Real log_bound{0};  // ln of the bound when applicable
};
LaguerreBound laguerre_bound(std::size_t n, const Real& x);

/// Monic polynomial with the given pairwise-distinct roots.
Polynomial node_polynomial(std::span<const Real> nodes);

struct MaxResult {
    Real argmax{0};
    Real value{0};
    Real rel_error{0};
};

/// Maximum of a continuous function over [-1,1]: Chebyshev-distributed grid of
/// grid_size points (endpoints included) followed by three local refinement
/// stages and a parabolic vertex step.
MaxResult maximize_on_biunit(const std::function<Real(const Real&)>& f, std::size_t grid_size,
                             bool parallel = false);

/// Sup norm on [-1,1], grid size max(4096, 64 deg) unless overridden (grid_size
/// = 0 means default); certified to ~1e-12 relative at the default grid.
Real poly_sup_norm(const Polynomial& p, std::size_t grid_size = 0);

/// L2([-1,1]) norm via exact cross-integrals: int x^{i+j} = 2/(i+j+1) for even i+j.
Real poly_l2_norm(const Polynomial& p);

}  // namespace wpsk
