#include "wpsk/polynomials.hpp"

#include "wpsk/sequences.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wpsk {

namespace {

Real ulp_slack() { return pow(Real(10), -Real(static_cast<int>(working_digits())) / 2); }

}  // namespace

Polynomial::Polynomial(std::vector<Real> coefficients) : coefficients_(std::move(coefficients)) {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Real Polynomial::coefficient(std::size_t k) const {
    return k < coefficients_.size() ? coefficients_[k] : Real(0);
}

Real Polynomial::operator()(const Real& x) const {
    Real acc = 0;
    for (std::size_t i = coefficients_.size(); i-- > 0;) acc = acc * x + coefficients_[i];
    return acc;
}

Polynomial Polynomial::derivative(std::size_t order) const {
    std::vector<Real> c = coefficients_;
    for (std::size_t pass = 0; pass < order; ++pass) {
        if (c.size() <= 1) return Polynomial();
        std::vector<Real> d(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = Real(static_cast<unsigned long>(k)) * c[k];
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<Real> c(std::max(coefficients_.size(), other.coefficients_.size()), Real(0));
    for (std::size_t i = 0; i < coefficients_.size(); ++i) c[i] += coefficients_[i];
    for (std::size_t i = 0; i < other.coefficients_.size(); ++i) c[i] += other.coefficients_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (is_zero() || other.is_zero()) return Polynomial();
    std::vector<Real> c(coefficients_.size() + other.coefficients_.size() - 1, Real(0));
    for (std::size_t i = 0; i < coefficients_.size(); ++i)
        for (std::size_t j = 0; j < other.coefficients_.size(); ++j)
            c[i + j] += coefficients_[i] * other.coefficients_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Real& s) const {
    std::vector<Real> c = coefficients_;
    for (Real& v : c) v *= s;
    return Polynomial(std::move(c));
}

Polynomial ChebyshevData::polynomial() const {
    std::vector<Real> dense(n + 1, Real(0));
    for (std::size_t k = 0; k < coefficients.size(); ++k) dense[n - 2 * k] = coefficients[k];
    return Polynomial(std::move(dense));
}

ChebyshevData chebyshev(std::size_t n) {
    static std::mutex cache_mutex;
    static std::map<std::pair<std::size_t, unsigned>, ChebyshevData> cache;
    const auto key = std::make_pair(n, working_digits());
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    ChebyshevData data;
    data.n = n;
    if (n == 0) {
        data.coefficients = {Real(1)};
        data.extrema = {Real(1)};
    } else {
        const Real ln2 = ln2_value();
        for (std::size_t k = 0; k <= n / 2; ++k) {
            // t_{n,n-2k} = (-1)^k 2^{n-2k-1} n (n-k-1)! / (k! (n-2k)!)
            Real log_mag = (Real(static_cast<unsigned long>(n)) - 2 * Real(static_cast<unsigned long>(k)) - 1) * ln2 +
                           log(Real(static_cast<unsigned long>(n))) + log_factorial(n - k - 1) -
                           log_factorial(k) - log_factorial(n - 2 * k);
            Real value = exp(log_mag);
            if (k % 2 == 1) value = -value;
            data.coefficients.push_back(value);
        }
        data.nodes = chebyshev_nodes(n);
        data.extrema = chebyshev_extrema(n);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, std::move(data)).first->second;
}

std::vector<Real> chebyshev_coefficients_recurrence(std::size_t n) {
    std::vector<Real> prev = {Real(1)};          // T_0
    if (n == 0) return prev;
    std::vector<Real> curr = {Real(0), Real(1)};  // T_1
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<Real> next(j + 2, Real(0));
        for (std::size_t i = 0; i < curr.size(); ++i) next[i + 1] = 2 * curr[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(curr);
        curr = std::move(next);
    }
    return curr;
}

std::vector<Real> chebyshev_nodes(std::size_t n) {
    std::vector<Real> nodes(n);
    const Real pi = pi_value();
    for (std::size_t k = 1; k <= n; ++k)
        nodes[k - 1] = cos(pi * (Real(static_cast<unsigned long>(k)) - Real(1) / 2) / Real(static_cast<unsigned long>(n)));
    return nodes;
}

std::vector<Real> chebyshev_extrema(std::size_t n) {
    std::vector<Real> extrema(n + 1);
    const Real pi = pi_value();
    for (std::size_t k = 0; k <= n; ++k)
        extrema[k] = cos(pi * Real(static_cast<unsigned long>(k)) / Real(static_cast<unsigned long>(n)));
    extrema.front() = 1;
    extrema.back() = -1;
    return extrema;
}

MarkovReport markov_envelope_check(const Polynomial& p) {
    MarkovReport report;
    const Real slack = ulp_slack();
    if (p.is_zero() || p.degree() == 0) {
        report.applicable = abs(p.coefficient(0)) <= 1 + slack;
        report.holds = report.applicable;
        report.min_margin = 1 - abs(p.coefficient(0));
        return report;
    }
    const std::size_t n = p.degree();
    for (const Real& x : chebyshev_extrema(n)) {
        if (abs(p(x)) > 1 + slack) return report;  // precondition fails: not applicable
    }
    report.applicable = true;
    report.holds = true;
    bool first = true;
    ChebyshevData cheb = chebyshev(n);
    for (std::size_t k = 0; 2 * k + 1 <= n; ++k) {
        Real lhs = abs(p.coefficient(n - 2 * k)) + abs(p.coefficient(n - 2 * k - 1));
        Real margin = abs(cheb.coefficients[k]) - lhs;
        if (first || margin < report.min_margin) {
            report.min_margin = margin;
            report.worst_pair = k;
            first = false;
        }
        if (margin < -slack) report.holds = false;
    }
    if (n % 2 == 0) {
        Real margin = 1 - abs(p.coefficient(0));
        if (first || margin < report.min_margin) {
            report.min_margin = margin;
            report.worst_pair = n / 2;
        }
        if (margin < -slack) report.holds = false;
    }
    return report;
}

Real log_labelle_constant(std::size_t n, std::size_t k) {
    if (k > n) throw std::domain_error("labelle_constant: requires k <= n");
    static std::mutex cache_mutex;
    static std::map<std::tuple<std::size_t, std::size_t, unsigned>, Real> cache;
    const auto key = std::make_tuple(n, k, working_digits());
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const std::size_t p = (n - k) / 2;
    // (2k-1)!! = (2k)! / (2^k k!), with (-1)!! = 1.
    Real log_dfact = log_factorial(2 * k) - Real(static_cast<unsigned long>(k)) * ln2_value() - log_factorial(k);
    Real log_binom = lgamma(Real(static_cast<unsigned long>(p + k)) + Real(3) / 2) -
                     lgamma(Real(static_cast<unsigned long>(k)) + Real(3) / 2) - log_factorial(p);
    Real value = log_dfact - log_factorial(k) +
                 log(Real(static_cast<unsigned long>(k)) + Real(1) / 2) / 2 + log_binom;
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, std::move(value)).first->second;
}

Real labelle_constant(std::size_t n, std::size_t k) { return exp(log_labelle_constant(n, k)); }

LabelleReport labelle_check(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("labelle_check: polynomial must be nonzero");
    LabelleReport report;
    report.holds = true;
    const std::size_t n = p.degree();
    const Real l2 = poly_l2_norm(p);
    const Real slack = ulp_slack();
    bool first = true;
    for (std::size_t k = 0; k <= n; ++k) {
        Real bound = labelle_constant(n, k) * l2;
        Real margin = bound - abs(p.coefficient(k));
        if (first || margin < report.min_margin) {
            report.min_margin = margin;
            report.worst_index = k;
            first = false;
        }
        if (margin < -slack * bound) report.holds = false;
    }
    return report;
}

Real laguerre(std::size_t n, const Real& x) {
    if (x <= 0) throw std::domain_error("laguerre: requires x > 0");
    Real sum = 0;
    Real term = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        sum += term;
        if (k < n) {
            term *= x * Real(static_cast<unsigned long>(n - k));
            term /= Real(static_cast<unsigned long>(k + 1)) * Real(static_cast<unsigned long>(k + 1));
        }
    }
    return sum;
}

Real laguerre_m_threshold(const Real& x) {
    if (x <= 0) throw std::domain_error("laguerre_m_threshold: requires x > 0");
    Real half = 1 + x / 2;
    return (std::max)({5 * x, x * half * half, 9 / x});
}

Real log_laguerre_c(const Real& x) {
    if (x <= 0) throw std::domain_error("log_laguerre_c: requires x > 0");
    const Real pi = pi_value();
    Real quarter_root = pow(x, Real(1) / 4);
    Real bracket = 3 + sqrt(pi / euler_value()) + 2 / (sqrt(pi) * quarter_root) +
                   Real(7) / (16 * sqrt(x)) + sqrt(x) * (2 + x);
    return -x / 2 + 2 * sqrt(x) - log(2 * sqrt(pi)) - log(quarter_root) + log(bracket);
}

LaguerreBound laguerre_bound(std::size_t n, const Real& x) {
    LaguerreBound result;
    if (Real(static_cast<unsigned long>(n)) < laguerre_m_threshold(x)) return result;
    result.applicable = true;
    Real nn(static_cast<unsigned long>(n));
    result.log_bound = log_laguerre_c(x) - log(nn) / 4 + 2 * sqrt(x * nn);
    return result;
}

Polynomial node_polynomial(std::span<const Real> nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw std::domain_error("node_polynomial: duplicate nodes");
    std::vector<Real> c = {Real(1)};
    for (const Real& root : nodes) {
        std::vector<Real> next(c.size() + 1, Real(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= root * c[i];
        }
        c = std::move(next);
    }
    return Polynomial(std::move(c));
}

MaxResult maximize_on_biunit(const std::function<Real(const Real&)>& f, std::size_t grid_size,
                             bool parallel) {
    if (grid_size < 16) grid_size = 16;
    const Real pi = pi_value();
    std::vector<Real> xs(grid_size), vs(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i)
        xs[i] = cos(pi * Real(static_cast<unsigned long>(i)) / Real(static_cast<unsigned long>(grid_size - 1)));
    xs.front() = 1;
    xs.back() = -1;
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) vs[i] = f(xs[i]);
    };
    if (parallel)
        parallel_for(grid_size, eval_range);
    else
        eval_range(0, grid_size);

    // local maxima candidates, best first
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < grid_size; ++i) {
        bool up = (i == 0) || vs[i] >= vs[i - 1];
        bool down = (i + 1 == grid_size) || vs[i] >= vs[i + 1];
        if (up && down) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return vs[a] > vs[b]; });
    if (candidates.size() > 6) candidates.resize(6);

    MaxResult best;
    best.argmax = xs[candidates.front()];
    best.value = vs[candidates.front()];
    Real last_stage_delta = 0;

    constexpr int kStagePoints = 17;
    for (std::size_t ci : candidates) {
        // xs descends with the index, so [lo, hi] brackets the grid maximum.
        Real lo = (ci + 1 < grid_size) ? xs[ci + 1] : xs[ci];
        Real hi = (ci > 0) ? xs[ci - 1] : xs[ci];
        Real bx = xs[ci], bv = vs[ci];
        Real penultimate = bv;
        std::vector<Real> px(kStagePoints), pv(kStagePoints);
        for (int stage = 0; stage < 3; ++stage) {
            penultimate = bv;
            for (int j = 0; j < kStagePoints; ++j) {
                px[j] = lo + (hi - lo) * j / (kStagePoints - 1);
                pv[j] = f(px[j]);
            }
            int bj = 0;
            for (int j = 1; j < kStagePoints; ++j)
                if (pv[j] > pv[bj]) bj = j;
            if (pv[bj] > bv) {
                bv = pv[bj];
                bx = px[bj];
            }
            lo = px[std::max(0, bj - 1)];
            hi = px[std::min(kStagePoints - 1, bj + 1)];
        }
        // parabolic vertex through the final bracket midpoint
        Real m = (lo + hi) / 2;
        Real fl = f(lo), fm = f(m), fh = f(hi);
        Real denom = fl - 2 * fm + fh;
        if (denom < 0) {
            Real vx = m + (hi - lo) / 2 * (fl - fh) / (2 * denom);
            vx = (std::min)(hi, (std::max)(lo, vx));
            Real vv = f(vx);
            if (vv > bv) {
                bv = vv;
                bx = vx;
            }
        }
        if (bv > best.value) {
            best.value = bv;
            best.argmax = bx;
            last_stage_delta = bv - penultimate;
        }
    }
    if (best.value != 0)
        best.rel_error = abs(last_stage_delta) / abs(best.value) +
                         pow(Real(10), -Real(static_cast<int>(working_digits())) + 5);
    return best;
}

Real poly_sup_norm(const Polynomial& p, std::size_t grid_size) {
    if (p.is_zero()) return Real(0);
    if (grid_size == 0) grid_size = std::max<std::size_t>(4096, 64 * p.degree());
    MaxResult r = maximize_on_biunit([&](const Real& x) { Real v = p(x); return v * v; }, grid_size);
    return sqrt(r.value);
}

Real poly_l2_norm(const Polynomial& p) {
    if (p.is_zero()) return Real(0);
    const auto& a = p.coefficients();
    Real acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i; j < a.size(); ++j) {
            if ((i + j) % 2 != 0) continue;
            Real cross = a[i] * a[j] * 2 / Real(static_cast<unsigned long>(i + j + 1));
            acc += (i == j) ? cross : 2 * cross;
        }
    }
    return sqrt(acc);
}

}  // namespace wpsk
