#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cppsfs/acceptance.hpp"
#include "cppsfs/asymptotics.hpp"
#include "cppsfs/io.hpp"
#include "cppsfs/montecarlo.hpp"
#include "cppsfs/svg.hpp"

namespace {

using namespace cppsfs;

struct CommonOpts {
    mc::ExperimentConfig config;
    std::string out;
    std::string config_path;
    std::string plot_dir;
};

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (schema 1)");
    cmd->add_option("--lambda", o.config.params.lambda, "birth rate");
    cmd->add_option("--mu", o.config.params.mu, "death rate");
    cmd->add_option("--T", o.config.params.T, "time horizon");
    cmd->add_option("--n", o.config.params.n, "sample size");
    cmd->add_option("--nu", o.config.params.nu, "mutation rate");
    cmd->add_option("--K", o.config.K, "max family size");
    cmd->add_option("--replicates", o.config.replicates, "replicate count");
    cmd->add_option("--seed", o.config.seed, "random seed");
    cmd->add_option("--parallelism", o.config.parallelism,
                    "worker threads (0 = auto)");
    cmd->add_option("--regime", [&o](const std::vector<std::string>& v) {
        o.config.regime = regime_from_name(v.front());
        return true;
    }, "exact | critical-intermediate | critical-limit | supercritical-limit");
}

// flags given on the command line override the config file
void load_config_file(const CLI::App* cmd, CommonOpts& o) {
    if (o.config_path.empty()) return;
    mc::ExperimentConfig base = io::config_from_json(io::read_file(o.config_path));
    auto keep = [&](const char* flag) { return cmd->count(flag) > 0; };
    if (!keep("--lambda")) o.config.params.lambda = base.params.lambda;
    if (!keep("--mu")) o.config.params.mu = base.params.mu;
    if (!keep("--T")) o.config.params.T = base.params.T;
    if (!keep("--n")) o.config.params.n = base.params.n;
    if (!keep("--nu")) o.config.params.nu = base.params.nu;
    if (!keep("--K")) o.config.K = base.K;
    if (!keep("--replicates")) o.config.replicates = base.replicates;
    if (!keep("--seed")) o.config.seed = base.seed;
    if (!keep("--parallelism")) o.config.parallelism = base.parallelism;
    if (!keep("--regime")) o.config.regime = base.regime;
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-")
        std::cout << content;
    else
        io::write_file(out, content);
}

int run_simulate(const CLI::App* cmd, CommonOpts& o, bool with_mutations) {
    load_config_file(cmd, o);
    if (!with_mutations) o.config.params.nu = 0.0;
    const auto table = mc::run_replicates(o.config);
    emit(o.out, io::table_to_csv(table));
    if (!o.plot_dir.empty()) svg::render_histograms(table, o.plot_dir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"birth-death genealogy simulator and branch-length statistics"};
    app.require_subcommand(1);

    CommonOpts sim_opts, sfs_opts;
    int cov_k = 4, integrals_kmax = 6;
    std::string cov_out, cov_json_out, integrals_out;
    CommonOpts diag_opts;

    auto* simulate = app.add_subcommand(
        "simulate", "run replicated genealogy simulations, write a CSV table");
    add_model_flags(simulate, sim_opts);
    simulate->add_option("--out", sim_opts.out, "output CSV path (- = stdout)");
    simulate->add_option("--plots", sim_opts.plot_dir,
                         "directory for z-statistic histograms (SVG)");

    auto* sfs = app.add_subcommand(
        "sfs", "simulate genealogies and scatter Poisson mutations");
    add_model_flags(sfs, sfs_opts);
    sfs->add_option("--out", sfs_opts.out, "output CSV path (- = stdout)");
    sfs->add_option("--plots", sfs_opts.plot_dir, "histogram directory");

    auto* cov = app.add_subcommand(
        "cov", "limiting covariance matrix of the standardized branch totals");
    cov->add_option("--K", cov_k, "max family size")->check(CLI::Range(2, 200));
    cov->add_option("--out", cov_out, "CSV output path (- = stdout)");
    cov->add_option("--json", cov_json_out, "JSON output path");

    auto* integrals = app.add_subcommand(
        "integrals", "tabulate covariance integrals: closed form vs quadrature");
    integrals->add_option("--kmax", integrals_kmax, "largest k")
        ->check(CLI::Range(2, 20));
    integrals->add_option("--out", integrals_out, "output path (- = stdout)");

    auto* verify =
        app.add_subcommand("verify", "run the full acceptance battery");

    auto* diag = app.add_subcommand(
        "diag", "report which limit-theorem hypotheses a configuration satisfies");
    add_model_flags(diag, diag_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(simulate, sim_opts, false);
        if (sfs->parsed()) return run_simulate(sfs, sfs_opts, true);
        if (cov->parsed()) {
            const auto m = asym::covariance_matrix(cov_k);
            emit(cov_out, io::covariance_to_csv(m));
            if (!cov_json_out.empty())
                io::write_file(cov_json_out, io::covariance_to_json(m));
            return 0;
        }
        if (integrals->parsed()) {
            std::ostringstream out;
            out << "integral,k,kp,closed,quadrature,abs_diff\n";
            auto row = [&](asym::Integral which, const char* name, int k, int kp) {
                const double cf = asym::integral_closed_form(which, k, kp);
                const double q = asym::integral_quadrature(which, k, kp);
                out << name << ',' << k << ',' << kp << ',' << cf << ',' << q
                    << ',' << std::abs(cf - q) << "\n";
            };
            for (int k = 2; k <= integrals_kmax; ++k)
                for (int kp = 2; kp <= k; ++kp) {
                    row(asym::Integral::I1, "I1", k, kp);
                    if (k == kp) row(asym::Integral::I3, "I3", k, kp);
                    if (k > kp) row(asym::Integral::I2, "I2", k, kp);
                    if (k >= kp + 2) row(asym::Integral::I4, "I4", k, kp);
                }
            emit(integrals_out, out.str());
            return 0;
        }
        if (verify->parsed()) {
            const auto results = acceptance::run_all(std::cout);
            return acceptance::all_passed(results) ? 0 : 1;
        }
        if (diag->parsed()) {
            load_config_file(diag, diag_opts);
            std::cout << mc::condition_diagnostics(diag_opts.config).summary();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
