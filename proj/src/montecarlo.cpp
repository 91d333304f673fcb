#include "cppsfs/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cppsfs/asymptotics.hpp"

namespace cppsfs::mc {

namespace {

int resolve_parallelism(int hint) {
    if (hint > 0) return hint;
    if (const char* env = std::getenv("CPPSFS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ReplicateRow run_one(const ExperimentConfig& cfg, std::uint64_t index) {
    RandomStream rand(cfg.seed, index);
    SampleGenealogy g = (cfg.regime == Regime::Exact)
                            ? sample_genealogy_exact(cfg.params, rand)
                            : sample_genealogy_limit(cfg.params, cfg.regime, rand);
    const BranchSpectrum spec = branch_spectrum(g, cfg.K);

    ReplicateRow row;
    row.replicate = index;
    row.population_size = g.population_size;
    row.lengths = spec.totals;
    row.mutations.assign(cfg.K, 0);
    if (cfg.params.nu > 0.0) {
        const SfsCounts sfs = scatter_mutations(spec, cfg.params.nu, rand);
        row.mutations = sfs.counts;
    }

    const double r = cfg.params.growth_rate();
    if (cfg.regime == Regime::Exact && cfg.params.effectively_critical()) {
        row.z = asym::standardize_critical(spec, g.population_size, cfg.params.n,
                                           cfg.K);
    } else if (cfg.regime == Regime::SupercriticalLimit ||
               (cfg.regime == Regime::Exact && r > 0.0 && cfg.K >= 2)) {
        row.z = asym::standardize_supercritical(spec, cfg.params.n, r, cfg.K);
    }
    return row;
}

} // namespace

void ExperimentConfig::apply_default_horizon() {
    if (params.T <= 0.0) params.T = 10.0 * params.n;
}

void ExperimentConfig::validate() const {
    params.validate();
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (K < 1 || K > params.n - 1)
        throw std::invalid_argument("K must be in [1, n-1]");
}

ReplicateTable run_replicates(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ReplicateTable table;
    table.config = config;
    table.rows.resize(config.replicates);

    const int workers =
        std::min(resolve_parallelism(config.parallelism), config.replicates);
    if (workers <= 1) {
        for (int i = 0; i < config.replicates; ++i)
            table.rows[i] = run_one(config, static_cast<std::uint64_t>(i));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < config.replicates; i += workers)
                    table.rows[i] = run_one(config, static_cast<std::uint64_t>(i));
            });
        }
        for (auto& t : pool) t.join();
    }

    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return table;
}

stats::MomentSummary z_moments(const ReplicateTable& table) {
    std::vector<std::vector<double>> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows) rows.push_back(r.z);
    return stats::empirical_moments(rows);
}

stats::MomentSummary length_moments(const ReplicateTable& table) {
    std::vector<std::vector<double>> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows) rows.push_back(r.lengths);
    return stats::empirical_moments(rows);
}

std::string ConditionReport::summary() const {
    std::ostringstream out;
    out << "n/T = " << n_over_T << "\n"
        << "n e^(-rT) = " << n_exp_neg_rT << "\n"
        << "n^(3/2) log(n) e^(-rT) = " << clt_super_condition << "\n"
        << "critical CLT plausible: " << (critical_clt_plausible ? "yes" : "no")
        << "\n"
        << "supercritical LLN plausible: " << (super_lln_plausible ? "yes" : "no")
        << "\n"
        << "supercritical CLT plausible: " << (super_clt_plausible ? "yes" : "no")
        << "\n";
    return out.str();
}

ConditionReport condition_diagnostics(const ExperimentConfig& config) {
    ConditionReport rep;
    const double n = config.params.n;
    const double T = config.params.T;
    const double r = config.params.growth_rate();
    rep.n_over_T = n / T;
    rep.critical_clt_plausible =
        config.params.effectively_critical() && rep.n_over_T <= 0.1;
    if (r > 0.0 && !config.params.effectively_critical()) {
        rep.n_exp_neg_rT = n * std::exp(-r * T);
        rep.clt_super_condition = std::pow(n, 1.5) * std::log(n) * std::exp(-r * T);
        rep.super_lln_plausible = rep.n_exp_neg_rT <= 0.01;
        rep.super_clt_plausible = rep.clt_super_condition <= 0.01;
    }
    return rep;
}

} // namespace cppsfs::mc
