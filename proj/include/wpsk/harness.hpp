#pragma once

#include "wpsk/bounds.hpp"
#include "wpsk/worstcase.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace wpsk {

enum class NodeScheme { chebyshev, equispaced, file };

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_numerical = 2,
    exit_violation = 3,
};

struct ExperimentConfig {
    Family family = Family::gaussian;
    Real epsilon{1};
    Real tau{1};
    Real beta{Real(1) / 2};
    LpNorm norm = LpNorm::sup;
    NodeScheme scheme = NodeScheme::chebyshev;
    std::string node_file;
    std::size_t n_min = 9;
    std::size_t n_max = 25;
    unsigned precision_digits = 60;
    Real truncation_tol{Real("1e-30")};
    std::size_t grid_size = 4096;
    std::uint64_t seed = 12345;
    bool allow_inapplicable = false;
};

std::shared_ptr<const Kernel> make_kernel(const ExperimentConfig& cfg);
AlphaSequence make_alpha(const ExperimentConfig& cfg);

/// Nodes for one experiment row; for the file scheme the first n entries of the
/// file are used (usage error if it holds fewer than n).
std::vector<Real> make_nodes(const ExperimentConfig& cfg, std::size_t n);

/// Runs the module-level inequality certifications at the configured family and
/// ranges; one line per check with the margin in log10 units. Exit 0 iff all
/// hold (expected-failure paths count as passing).
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

/// Per-n sandwich rows: lower bound, node-polynomial witness, measured
/// e_p(S_n^phi), theorem upper bound; CSV schema
/// family,epsilon,tau,norm,nodes,n,log10_lower,log10_witness,log10_empirical,log10_upper,precision_digits,status
int cmd_convergence(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& diag);

/// Per-n unweighted vs weighted interpolation error estimates (bound-formula
/// and measured) with least-squares slopes of both log-ratios.
int cmd_compare_weighted(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& diag);

/// Prints every explicit constant for the configured family.
int cmd_constants(const ExperimentConfig& cfg, std::ostream& out);

/// d = 2 circle witness for n in {1, 10, 100} with a bit-identity check.
int cmd_multivariate_demo(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace wpsk
