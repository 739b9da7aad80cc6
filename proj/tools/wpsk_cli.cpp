// Command-line front end: lemma certifications and convergence experiments for
// approximation in weighted power series kernel spaces on [-1,1].

#include "wpsk/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CliOptions {
    std::string kernel = "gaussian";
    double epsilon = 1.0;
    double tau = 1.0;
    double beta = 0.5;
    std::string norm = "inf";
    std::string nodes = "chebyshev";
    std::size_t n_min = 9;
    std::size_t n_max = 25;
    unsigned precision_digits = 60;
    double truncation_tol = 1e-30;
    std::size_t grid_size = 4096;
    std::uint64_t seed = 12345;
    bool allow_inapplicable = false;
    std::string output;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--kernel", opt.kernel, "Kernel family")
        ->check(CLI::IsMember({"gaussian", "exponential", "hermite", "bessel", "power"}));
    cmd->add_option("--epsilon", opt.epsilon, "Scale parameter epsilon");
    cmd->add_option("--tau", opt.tau, "Hermite parameter tau");
    cmd->add_option("--beta", opt.beta, "Power family exponent beta");
    cmd->add_option("--norm", opt.norm, "Error norm")->check(CLI::IsMember({"inf", "l2"}));
    cmd->add_option("--nodes", opt.nodes, "Node scheme: chebyshev, equispaced, or a file path");
    cmd->add_option("--n-min", opt.n_min, "Smallest n");
    cmd->add_option("--n-max", opt.n_max, "Largest n");
    cmd->add_option("--precision-digits", opt.precision_digits, "Software precision (>= 30)");
    cmd->add_option("--truncation-tol", opt.truncation_tol, "Series tail tolerance");
    cmd->add_option("--grid-size", opt.grid_size, "Sup-norm grid size");
    cmd->add_option("--seed", opt.seed, "Seed for randomized checks");
    cmd->add_flag("--allow-inapplicable", opt.allow_inapplicable,
                  "Emit rows for n below the m_L gate");
    cmd->add_option("--output", opt.output, "Write CSV/report to this path instead of stdout");
}

wpsk::ExperimentConfig to_config(const CliOptions& opt) {
    wpsk::ExperimentConfig cfg;
    if (opt.kernel == "gaussian")
        cfg.family = wpsk::Family::gaussian;
    else if (opt.kernel == "exponential")
        cfg.family = wpsk::Family::exponential;
    else if (opt.kernel == "hermite")
        cfg.family = wpsk::Family::hermite;
    else if (opt.kernel == "bessel")
        cfg.family = wpsk::Family::bessel;
    else
        cfg.family = wpsk::Family::power;
    cfg.epsilon = wpsk::Real(opt.epsilon);
    cfg.tau = wpsk::Real(opt.tau);
    cfg.beta = wpsk::Real(opt.beta);
    cfg.norm = opt.norm == "inf" ? wpsk::LpNorm::sup : wpsk::LpNorm::two;
    if (opt.nodes == "chebyshev") {
        cfg.scheme = wpsk::NodeScheme::chebyshev;
    } else if (opt.nodes == "equispaced") {
        cfg.scheme = wpsk::NodeScheme::equispaced;
    } else {
        cfg.scheme = wpsk::NodeScheme::file;
        cfg.node_file = opt.nodes;
    }
    cfg.n_min = opt.n_min;
    cfg.n_max = opt.n_max;
    cfg.precision_digits = opt.precision_digits;
    cfg.truncation_tol = wpsk::Real(opt.truncation_tol);
    cfg.grid_size = opt.grid_size;
    cfg.seed = opt.seed;
    cfg.allow_inapplicable = opt.allow_inapplicable;
    return cfg;
}

int run_with_output(const CliOptions& opt, const std::function<int(std::ostream&)>& fn) {
    if (opt.output.empty()) return fn(std::cout);
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << opt.output << "\n";
        return wpsk::exit_usage;
    }
    return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"worst-case approximation error certification for weighted power series kernels"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* verify = app.add_subcommand("verify", "Run the inequality certification suites");
    CLI::App* convergence =
        app.add_subcommand("convergence", "Sandwich table: lower/witness/empirical/upper per n");
    CLI::App* compare = app.add_subcommand(
        "compare-weighted", "Unweighted vs weighted interpolation error estimates (gaussian)");
    CLI::App* constants = app.add_subcommand("constants", "Print the explicit bound constants");
    CLI::App* multivariate =
        app.add_subcommand("multivariate-demo", "d=2 unit-circle witness, n in {1,10,100}");
    for (CLI::App* cmd : {verify, convergence, compare, constants, multivariate})
        add_common_flags(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : wpsk::exit_usage;
    }

    const wpsk::ExperimentConfig cfg = to_config(opt);
    try {
        if (verify->parsed())
            return run_with_output(opt, [&](std::ostream& out) { return wpsk::cmd_verify(cfg, out); });
        if (convergence->parsed())
            return run_with_output(
                opt, [&](std::ostream& out) { return wpsk::cmd_convergence(cfg, out, std::cerr); });
        if (compare->parsed())
            return run_with_output(opt, [&](std::ostream& out) {
                return wpsk::cmd_compare_weighted(cfg, out, std::cerr);
            });
        if (constants->parsed())
            return run_with_output(opt,
                                   [&](std::ostream& out) { return wpsk::cmd_constants(cfg, out); });
        if (multivariate->parsed())
            return run_with_output(
                opt, [&](std::ostream& out) { return wpsk::cmd_multivariate_demo(cfg, out); });
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return wpsk::exit_numerical;
    }
    return wpsk::exit_usage;
}
