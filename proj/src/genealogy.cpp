#include "cppsfs/genealogy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cppsfs/kernels.hpp"

namespace cppsfs {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Exact: return "exact";
        case Regime::CriticalIntermediate: return "critical-intermediate";
        case Regime::CriticalLimit: return "critical-limit";
        case Regime::SupercriticalLimit: return "supercritical-limit";
    }
    return "?";
}

Regime regime_from_name(const std::string& name) {
    // "critical" / "supercritical" are CLI conveniences: both mean the
    // exact finite-(n,T) sampler, with the rates deciding the case.
    if (name == "exact" || name == "critical" || name == "supercritical")
        return Regime::Exact;
    if (name == "critical-intermediate") return Regime::CriticalIntermediate;
    if (name == "critical-limit") return Regime::CriticalLimit;
    if (name == "supercritical-limit") return Regime::SupercriticalLimit;
    throw std::invalid_argument("unknown regime: " + name);
}

SampleGenealogy sample_genealogy_exact(const ModelParams& params, RandomStream& rand) {
    params.validate();
    const int n = params.n;
    const double delta = dist::survival_tail_delta(params);
    const double q = dist::sample_scaled_fraction(params, rand);
    const double y = std::min(delta * q, 1.0);

    SampleGenealogy g;
    g.regime = Regime::Exact;
    g.coordinate = Coordinate::H;
    g.T = params.T;
    g.fraction = q;
    g.times.resize(n - 1);

    if (n > 1) {
        std::vector<double> p(n - 1);
        for (auto& v : p) v = rand.next_open01();
        if (params.effectively_critical()) {
            // H = T*u/q with u from the conditional pairwise-time inverse;
            // algebraically identical to inverting the conditional height
            // CDF, and expressed through the batch kernel
            const double a = delta * params.lambda * params.T;
            kernels::active().conditional_time_transform(p.data(), q, a,
                                                         g.times.data(), n - 1);
            const double scale = params.T / q;
            for (auto& t : g.times) t *= scale;
        } else {
            for (int i = 0; i < n - 1; ++i)
                g.times[i] = dist::conditional_coalescence_inverse(params, y, p[i]);
        }
    }

    std::uint64_t total = 0;
    for (int i = 0; i <= n; ++i) total += dist::sample_gap(params, y, rand);
    g.population_size = total - 1;
    return g;
}

SampleGenealogy sample_genealogy_limit(const ModelParams& params, Regime regime,
                                       RandomStream& rand) {
    params.validate();
    const int n = params.n;
    if (n < 2) throw std::invalid_argument("limit regimes require n >= 2");

    SampleGenealogy g;
    g.regime = regime;
    g.T = params.T;
    g.times.resize(n - 1);
    std::vector<double> p(n - 1);

    switch (regime) {
        case Regime::CriticalIntermediate: {
            const double q =
                dist::sample_limit_primitive(dist::LimitKind::LimitFraction, rand, n);
            g.fraction = q;
            for (auto& v : p) v = rand.next_open01();
            kernels::active().conditional_time_transform(p.data(), q, 1.0,
                                                         g.times.data(), n - 1);
            const double scale = params.T / q;
            for (auto& t : g.times) t *= scale;
            g.coordinate = Coordinate::H;
            break;
        }
        case Regime::CriticalLimit: {
            const double w =
                dist::sample_limit_primitive(dist::LimitKind::ExponentialUnit, rand);
            g.fraction = w;
            for (auto& v : p) v = rand.next_open01();
            kernels::active().heavy_tail_transform(p.data(), g.times.data(), n - 1);
            const double scale = params.T * w / n;
            for (auto& t : g.times) t *= scale;
            g.coordinate = Coordinate::H;
            break;
        }
        case Regime::SupercriticalLimit: {
            const double r = params.growth_rate();
            if (!(r > 0.0))
                throw std::invalid_argument("supercritical-limit requires r > 0");
            const double w =
                dist::sample_limit_primitive(dist::LimitKind::ExponentialUnit, rand);
            g.fraction = w;
            const double shift = std::log(1.0 / w) + std::log(static_cast<double>(n));
            for (int i = 0; i < n - 1; ++i) {
                const double u =
                    dist::sample_limit_primitive(dist::LimitKind::Logistic, rand);
                g.times[i] = (shift + u) / r;
            }
            g.coordinate = Coordinate::G;
            break;
        }
        case Regime::Exact:
            throw std::invalid_argument("use sample_genealogy_exact for the exact regime");
    }
    return g;
}

BranchSpectrum branch_spectrum(const SampleGenealogy& g, int max_k,
                               bool with_per_branch) {
    const int n = g.n();
    if (max_k < 1 || max_k > n - 1)
        throw std::invalid_argument("max_k must be in [1, n-1]");

    BranchSpectrum s;
    s.totals.assign(max_k, 0.0);

    const double inf = std::numeric_limits<double>::infinity();
    // Extended height array: sentinel values at both ends absorb the
    // boundary formulas (index 0 and n-k) into the interior window sum.
    std::vector<double> ext(n + 1);

    if (g.coordinate == Coordinate::H) {
        ext[0] = inf;
        ext[n] = inf;
        for (int i = 1; i < n; ++i) ext[i] = g.times[i - 1];
        const auto& ops = kernels::active();
        for (int k = 1; k <= max_k; ++k)
            s.totals[k - 1] = ops.spectrum_window_sum_h(ext.data(), 0, n - k + 1, k);
        double hmax = 0.0;
        for (int i = 1; i < n; ++i) hmax = std::max(hmax, ext[i]);
        s.stem = g.T - hmax;
    } else {
        // G coordinates: unbounded limit heights, k >= 2 only (the k = 1
        // total depends on the forgotten horizon).
        ext[0] = -inf;
        ext[n] = -inf;
        for (int i = 1; i < n; ++i) ext[i] = g.times[i - 1];
        const auto& ops = kernels::active();
        for (int k = 2; k <= max_k; ++k)
            s.totals[k - 1] = ops.spectrum_window_sum_g(ext.data(), 0, n - k + 1, k);
        s.stem = 0.0;
    }

    if (with_per_branch) {
        s.per_branch.assign(max_k, {});
        for (int k = 1; k <= max_k; ++k) {
            auto& row = s.per_branch[k - 1];
            row.assign(n - k + 1, 0.0);
            if (g.coordinate == Coordinate::G && k == 1) continue;
            for (int i = 0; i <= n - k; ++i) {
                double v;
                if (g.coordinate == Coordinate::H) {
                    double outer = std::min(ext[i], ext[i + k]);
                    double inner = (k == 1) ? 0.0 : -1.0;
                    for (int j = i + 1; j < i + k; ++j) inner = std::max(inner, ext[j]);
                    v = (k == 1) ? outer : outer - inner;
                } else {
                    double outer = std::max(ext[i], ext[i + k]);
                    double inner = ext[i + 1];
                    for (int j = i + 2; j < i + k; ++j) inner = std::min(inner, ext[j]);
                    v = inner - outer;
                }
                row[i] = v > 0.0 ? v : 0.0;
            }
        }
    }
    return s;
}

namespace {

int build_interval(const std::vector<double>& h, int lo, int hi,
                   GenealogyTree& tree, int& next_internal) {
    if (lo == hi) return lo;  // single leaf
    // Split at the highest coalescence height in (lo, hi]; earliest
    // index wins ties so the construction is deterministic.
    int m = lo + 1;
    for (int j = lo + 2; j <= hi; ++j)
        if (h[j] > h[m]) m = j;
    const int node = next_internal++;
    const int left = build_interval(h, lo, m - 1, tree, next_internal);
    const int right = build_interval(h, m, hi, tree, next_internal);
    tree.nodes[node].height = h[m];
    tree.nodes[node].left = left;
    tree.nodes[node].right = right;
    tree.nodes[node].leaf_count =
        tree.nodes[left].leaf_count + tree.nodes[right].leaf_count;
    tree.nodes[left].parent = node;
    tree.nodes[right].parent = node;
    return node;
}

} // namespace

GenealogyTree build_tree(const SampleGenealogy& g) {
    if (g.coordinate != Coordinate::H)
        throw std::invalid_argument("build_tree requires H coordinates");
    const int n = g.n();
    GenealogyTree tree;
    tree.T = g.T;
    tree.n_leaves = n;
    tree.nodes.resize(2 * n - 1);
    std::vector<double> h(n);
    for (int i = 1; i < n; ++i) h[i] = g.times[i - 1];
    int next_internal = n;
    tree.root = (n == 1) ? 0 : build_interval(h, 0, n - 1, tree, next_internal);
    tree.nodes[tree.root].parent = -1;
    return tree;
}

BranchSpectrum spectrum_from_tree(const GenealogyTree& t, int max_k) {
    if (max_k < 1 || max_k > t.n_leaves - 1)
        throw std::invalid_argument("max_k must be in [1, n-1]");
    BranchSpectrum s;
    s.totals.assign(max_k, 0.0);
    for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) {
        const auto& node = t.nodes[i];
        if (node.parent < 0) continue;
        const double len = t.nodes[node.parent].height - node.height;
        if (node.leaf_count <= max_k) s.totals[node.leaf_count - 1] += len;
    }
    s.stem = t.T - t.nodes[t.root].height;
    return s;
}

std::uint64_t sample_poisson(double mean, RandomStream& rand) {
    if (!(mean > 0.0)) return 0;
    // arrival counting: exact, O(mean) uniforms
    std::uint64_t count = 0;
    double t = -std::log1p(-rand.next_open01());
    while (t < mean) {
        ++count;
        t += -std::log1p(-rand.next_open01());
    }
    return count;
}

SfsCounts scatter_mutations(const BranchSpectrum& s, double nu, RandomStream& rand) {
    if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    SfsCounts out;
    out.counts.resize(s.totals.size());
    for (std::size_t i = 0; i < s.totals.size(); ++i)
        out.counts[i] = sample_poisson(nu * s.totals[i], rand);
    return out;
}

} // namespace cppsfs
