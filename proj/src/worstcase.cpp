#include "wpsk/worstcase.hpp"

#include "wpsk/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

namespace wpsk {

namespace {

// sum_{k >= K} alpha_k^{-1} envelope^2 growth^{2k} once the (growth-adjusted)
// term ratio has dropped below 1/2: bounded by twice the first omitted term.
struct TailGuard {
    const AlphaSequence& alpha;
    Real growth_sq;
    Real prev_ratio{-1};
    int consecutive = 0;

    // returns a certified bound on the tail after index k, or -1 if not yet certifiable
    Real bound_after(std::size_t k, const Real& envelope_sq) {
        Real ratio = growth_sq * exp(alpha.log_alpha(k) - alpha.log_alpha(k + 1));
        bool decaying = ratio < Real(1) / 2 && (prev_ratio < 0 || ratio <= prev_ratio);
        prev_ratio = ratio;
        if (decaying)
            ++consecutive;
        else
            consecutive = 0;
        if (consecutive < 2) return Real(-1);
        Real first_omitted =
            envelope_sq *
            exp(-alpha.log_alpha(k + 1) + Real(static_cast<unsigned long>(k + 1)) * log(growth_sq));
        return 2 * first_omitted;
    }
};

Real pointwise_worst_case_sq(const LinearApproximation& a, const Real& x,
                             const WorstCaseConfig& cfg) {
    const AlphaSequence& alpha = a.kernel().alpha();
    ResidualStream stream(a, x);
    const Real envelope_sq = stream.envelope() * stream.envelope();
    TailGuard guard{alpha, stream.growth() * stream.growth()};
    // below this, terms can never matter at the requested relative tolerance
    const Real abs_floor =
        envelope_sq * pow(Real(10), -2 * Real(static_cast<int>(working_digits())));
    Real acc = 0;
    for (std::size_t steps = 0; steps < 10000; ++steps) {
        std::size_t k = stream.index();
        Real r = stream.next();
        acc += r * r * exp(-alpha.log_alpha(k));
        Real tail = guard.bound_after(k, envelope_sq);
        if (tail >= 0 && (tail <= cfg.truncation_tol * acc || tail <= abs_floor)) return acc;
    }
    throw numerical_error("pointwise worst case: tail certificate not reached within 10^4 terms");
}

// Shared truncation plan for grid sweeps: the residual index range and the
// linear-domain alpha^{-1} values are fixed up front so the per-point loop
// carries no log-domain work.
struct ResidualPlan {
    std::size_t k0 = 0;
    std::size_t k_end = 0;
    std::vector<Real> inv_alpha;       // alpha_k^{-1}, k in [k0, k_end)
    std::vector<Real> inv_alpha_sqrt;  // alpha_k^{-1/2}
    Real tail_rel{0};                  // certified tail relative to the probe partial sum
};

ResidualPlan make_plan(const LinearApproximation& a, const WorstCaseConfig& cfg) {
    const AlphaSequence& alpha = a.kernel().alpha();
    // envelope over a coarse probe grid
    Real envelope = 0;
    const Real pi = pi_value();
    for (int i = 0; i <= 32; ++i) {
        ResidualStream stream(a, cos(pi * Real(i) / 32));
        envelope = (std::max)(envelope, stream.envelope());
    }
    const Real envelope_sq = envelope * envelope;
    // probe at an irrational abscissa so it never coincides with a node
    ResidualStream probe(a, cos(Real(1)));
    TailGuard guard{alpha, probe.growth() * probe.growth()};
    const Real abs_floor =
        envelope_sq * pow(Real(10), -2 * Real(static_cast<int>(working_digits())));
    ResidualPlan plan;
    plan.k0 = probe.index();
    Real acc = 0;
    Real certified_tail = 0;
    bool cut_found = false;
    for (std::size_t steps = 0; steps < 10000 && !cut_found; ++steps) {
        std::size_t k = probe.index();
        Real r = probe.next();
        acc += r * r * exp(-alpha.log_alpha(k));
        Real tail = guard.bound_after(k, envelope_sq);
        // 1e6 safety factor against envelope variation between probe points
        if (tail >= 0 && (tail * Real(1000000) <= cfg.truncation_tol * acc || tail <= abs_floor)) {
            plan.k_end = k + 1;
            certified_tail = tail;
            cut_found = true;
        }
    }
    if (!cut_found) throw numerical_error("worst case plan: tail certificate not reached");
    plan.tail_rel = acc > 0 ? certified_tail / acc : Real(0);
    plan.inv_alpha.reserve(plan.k_end - plan.k0);
    for (std::size_t k = plan.k0; k < plan.k_end; ++k) {
        plan.inv_alpha.push_back(exp(-alpha.log_alpha(k)));
        plan.inv_alpha_sqrt.push_back(exp(-alpha.log_alpha(k) / 2));
    }
    return plan;
}

Real plan_pointwise_sq(const LinearApproximation& a, const Real& x, const ResidualPlan& plan) {
    ResidualStream stream(a, x);
    Real acc = 0;
    for (std::size_t k = plan.k0; k < plan.k_end; ++k) {
        Real r = stream.next();
        acc += r * r * plan.inv_alpha[k - plan.k0];
    }
    return acc;
}

}  // namespace

Real pointwise_worst_case(const LinearApproximation& a, const Real& x, const WorstCaseConfig& cfg) {
    if (abs(x) > 1) throw std::domain_error("pointwise_worst_case: x must lie in [-1,1]");
    return sqrt(pointwise_worst_case_sq(a, x, cfg));
}

Real power_function_gram(const Kernel& kernel, std::span<const Real> nodes, const Real& x,
                         unsigned precision_digits) {
    PrecisionGuard guard(precision_digits);
    const std::size_t n = nodes.size();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram.at(i, j) = kernel(nodes[i], nodes[j]);
    auto lower = cholesky(gram);
    if (!lower)
        throw precision_error("power_function_gram: Gram factorization failed",
                              pow(Real(10), 2 * static_cast<int>(precision_digits)));
    std::vector<Real> kx(n);
    for (std::size_t i = 0; i < n; ++i) kx[i] = kernel(nodes[i], x);
    std::vector<Real> y = forward_substitute(*lower, kx);
    Real quad = 0;
    for (const Real& v : y) quad += v * v;
    Real value_sq = kernel(x, x) - quad;
    const Real clamp_tol = kernel(x, x) * pow(Real(10), -Real(static_cast<int>(precision_digits)) / 2);
    if (value_sq < 0) {
        if (value_sq < -clamp_tol)
            throw numerical_error("power_function_gram: negative square beyond certified roundoff");
        value_sq = 0;
    }
    return sqrt(value_sq);
}

ErrorEstimate sup_worst_case(const LinearApproximation& a, const WorstCaseConfig& cfg) {
    const std::size_t grid = std::max(cfg.grid_size, 64 * (a.size() + 1));
    const ResidualPlan plan = make_plan(a, cfg);
    MaxResult r = maximize_on_biunit(
        [&](const Real& x) { return plan_pointwise_sq(a, x, plan); }, grid, cfg.parallel);
    ErrorEstimate estimate;
    estimate.method = ErrorMethod::onb_residual;
    estimate.log10_value = log10_from_ln(log(r.value) / 2);
    estimate.certified_rel_error = r.rel_error / 2 + plan.tail_rel + cfg.truncation_tol;
    if (estimate.certified_rel_error > Real("1e-6"))
        throw numerical_error("sup_worst_case: certified relative error exceeds 1e-6");
    return estimate;
}

ErrorEstimate l2_worst_case(const LinearApproximation& a, const WorstCaseConfig& cfg) {
    const ResidualPlan plan = make_plan(a, cfg);
    const std::size_t k0 = plan.k0;
    const std::size_t k_end = plan.k_end;
    const std::size_t dim = k_end - k0;

    Real previous = -1;
    Real lambda_max = 0;
    for (std::size_t order = 64; order <= 4096; order *= 2) {
        const GaussLegendreRule& rule = gauss_legendre(order);
        // B[i][k] = sqrt(w_i) r_k(q_i) alpha_k^{-1/2};  M = B^T B
        std::vector<std::vector<Real>> B(order, std::vector<Real>(dim));
        auto fill = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                ResidualStream stream(a, rule.nodes[i]);
                const Real sw = sqrt(rule.weights[i]);
                for (std::size_t k = k0; k < k_end; ++k)
                    B[i][k - k0] = sw * stream.next() * plan.inv_alpha_sqrt[k - k0];
            }
        };
        if (cfg.parallel)
            parallel_for(order, fill);
        else
            fill(0, order);

        std::vector<Real> tmp(order);
        auto apply = [&](std::span<const Real> v, std::span<Real> out) {
            for (std::size_t i = 0; i < order; ++i) {
                Real acc = 0;
                for (std::size_t k = 0; k < dim; ++k) acc += B[i][k] * v[k];
                tmp[i] = acc;
            }
            for (std::size_t k = 0; k < dim; ++k) {
                Real acc = 0;
                for (std::size_t i = 0; i < order; ++i) acc += B[i][k] * tmp[i];
                out[k] = acc;
            }
        };
        lambda_max = power_iteration_largest(apply, dim, cfg.eigen_rel_tol);
        if (previous >= 0) {
            Real scale = (std::max)(lambda_max, previous);
            if (scale == 0 || abs(lambda_max - previous) <= cfg.quad_rel_tol * scale) {
                ErrorEstimate estimate;
                estimate.method = ErrorMethod::onb_residual;
                estimate.log10_value = log10_from_ln(log(lambda_max) / 2);
                estimate.certified_rel_error =
                    cfg.quad_rel_tol + cfg.eigen_rel_tol + plan.tail_rel / 2;
                if (estimate.certified_rel_error > Real("1e-6"))
                    throw numerical_error("l2_worst_case: certified relative error exceeds 1e-6");
                return estimate;
            }
        }
        previous = lambda_max;
    }
    throw numerical_error("l2_worst_case: quadrature doubling did not converge");
}

ErrorEstimate worst_case_error(const LinearApproximation& a, const WorstCaseConfig& cfg) {
    return cfg.norm == LpNorm::sup ? sup_worst_case(a, cfg) : l2_worst_case(a, cfg);
}

Real lower_bound_witness(const std::shared_ptr<const Kernel>& kernel, std::span<const Real> nodes,
                         LpNorm p) {
    SeriesFunction witness = embed_polynomial(node_polynomial(nodes), kernel);
    Real norm_k = log_series_norm(witness);
    return exp(log(lp_norm(witness, p)) - norm_k);
}

}  // namespace wpsk
