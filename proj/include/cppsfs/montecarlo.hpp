#ifndef CPPSFS_MONTECARLO_HPP
#define CPPSFS_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cppsfs/genealogy.hpp"
#include "cppsfs/stats.hpp"

namespace cppsfs::mc {

struct ExperimentConfig {
    ModelParams params;
    Regime regime = Regime::Exact;
    int replicates = 1;
    int K = 2;
    std::uint64_t seed = 0;
    int parallelism = 0;  ///< 0 = CPPSFS_THREADS env or hardware default

    /// Applies the default horizon schedule T = 10 n for critical
    /// configs when T was not set explicitly (T <= 0 sentinel).
    void apply_default_horizon();
    void validate() const;
};

struct ReplicateRow {
    std::uint64_t replicate = 0;
    std::uint64_t population_size = 0;  ///< 0 outside the exact regime
    std::vector<double> lengths;        ///< L^1..L^K (L^1 = 0 in G coordinates)
    std::vector<std::uint64_t> mutations;  ///< M^1..M^K (all 0 when nu = 0)
    /// Standardized statistics: K entries (z_1..z_K) for critical exact
    /// runs, K-1 entries (z_2..z_K) for supercritical runs, empty for
    /// the intermediate limit regimes where neither normalization applies.
    std::vector<double> z;
};

struct ReplicateTable {
    ExperimentConfig config;
    std::vector<ReplicateRow> rows;
    double wall_seconds = 0.0;

    int z_dim() const { return rows.empty() ? 0 : static_cast<int>(rows.front().z.size()); }
};

/// Runs R independent replicates; replicate i uses stream-id i, so the
/// result is a pure function of the config regardless of parallelism.
ReplicateTable run_replicates(const ExperimentConfig& config);

/// Column-wise moments of the z-vectors (or of the raw lengths when
/// z is empty).
stats::MomentSummary z_moments(const ReplicateTable& table);
stats::MomentSummary length_moments(const ReplicateTable& table);

/// Forward-in-time birth-death simulation with full lineage tracking;
/// the independent oracle for the coalescent construction.  Rejects
/// and retries until the population at T has at least n survivors.
SampleGenealogy forward_bd_genealogy(const ModelParams& params, RandomStream& rand);

struct ConditionReport {
    double n_over_T = 0.0;
    double n_exp_neg_rT = 0.0;         ///< n e^{-rT}
    double clt_super_condition = 0.0;  ///< n^{3/2} (log n) e^{-rT}
    bool critical_clt_plausible = false;
    bool super_lln_plausible = false;
    bool super_clt_plausible = false;

    std::string summary() const;
};

/// Diagnostics for whether a configuration plausibly satisfies the
/// hypotheses of the limit theorems being exercised.
ConditionReport condition_diagnostics(const ExperimentConfig& config);

} // namespace cppsfs::mc

#endif
