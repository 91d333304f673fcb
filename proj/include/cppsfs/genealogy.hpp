#ifndef CPPSFS_GENEALOGY_HPP
#define CPPSFS_GENEALOGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cppsfs/distributions.hpp"
#include "cppsfs/model.hpp"
#include "cppsfs/random.hpp"

namespace cppsfs {

enum class Regime {
    Exact,                ///< finite n, finite T, either growth regime
    CriticalIntermediate, ///< T -> inf taken, n finite
    CriticalLimit,        ///< T -> inf then n -> inf
    SupercriticalLimit,   ///< r > 0 limit, G coordinates
};

enum class Coordinate { H, G };

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& name);

/// A sampled coalescent-point-process genealogy.  times holds the n-1
/// coalescence heights H_i (or G_i = T - H_i for the supercritical
/// limit, where the values are unbounded and may be negative).
struct SampleGenealogy {
    std::vector<double> times;
    std::uint64_t population_size = 0;  ///< N_T, exact regime only
    double fraction = 0.0;              ///< realized Q (or W) value
    Regime regime = Regime::Exact;
    Coordinate coordinate = Coordinate::H;
    double T = 0.0;

    int n() const { return static_cast<int>(times.size()) + 1; }
};

/// Per-k branch-length totals.  totals[k-1] = L^k for 1 <= k <= max_k.
struct BranchSpectrum {
    std::vector<double> totals;
    double stem = 0.0;  ///< T - max_i H_i, the portion supporting all n leaves
    /// per_branch[k-1][i] = L^k_i for 0 <= i <= n-k; filled only on request.
    std::vector<std::vector<double>> per_branch;

    int max_k() const { return static_cast<int>(totals.size()); }
    double total(int k) const { return totals.at(k - 1); }
};

/// Explicit binary genealogical tree, the independent oracle for the
/// spectrum formulas.  Leaves are nodes 0..n-1 at height 0; internal
/// nodes follow.
struct GenealogyTree {
    struct Node {
        int parent = -1;
        int left = -1, right = -1;
        double height = 0.0;
        int leaf_count = 1;
    };
    std::vector<Node> nodes;
    int root = -1;
    double T = 0.0;
    int n_leaves = 0;
};

/// Mutation counts: counts[k-1] = M^k.
struct SfsCounts {
    std::vector<std::uint64_t> counts;
};

/// Exact sampler: Q (hence Y = delta*Q), then n-1 conditionally i.i.d.
/// heights, then the population size from geometric gaps.
SampleGenealogy sample_genealogy_exact(const ModelParams& params, RandomStream& rand);

/// Limit-regime samplers (see Regime).
SampleGenealogy sample_genealogy_limit(const ModelParams& params, Regime regime,
                                       RandomStream& rand);

/// Branch-length spectrum via the max/min window formulas.
BranchSpectrum branch_spectrum(const SampleGenealogy& g, int max_k,
                               bool with_per_branch = false);

/// Builds the explicit tree from H coordinates (finite T).
GenealogyTree build_tree(const SampleGenealogy& g);

/// Spectrum read off the explicit tree edges; agrees exactly with
/// branch_spectrum.
BranchSpectrum spectrum_from_tree(const GenealogyTree& t, int max_k);

/// Poisson(nu * L^k) mutation counts per family size.
SfsCounts scatter_mutations(const BranchSpectrum& s, double nu, RandomStream& rand);

/// Exact Poisson sampler used by scatter_mutations (arrival counting).
std::uint64_t sample_poisson(double mean, RandomStream& rand);

} // namespace cppsfs

#endif
