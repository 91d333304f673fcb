#include <cmath>
#include <stdexcept>
#include <vector>

#include "cppsfs/montecarlo.hpp"

namespace cppsfs::mc {

namespace {

constexpr int kRejectionBudget = 1'000'000;

// Population in planar (contour) order.  gaps[i] is the absolute time
// at which individuals i and i+1 last shared an ancestor: a birth
// inserts the child immediately to the parent's right with the current
// time as the new gap, and a death merges the two adjacent gaps by
// keeping the older (smaller) split time.  This reproduces the
// adjacency convention of the coalescent representation, so adjacent
// sampled leaves can be compared across the two implementations.
struct PlanarPopulation {
    std::vector<double> gaps;
    bool extinct = false;

    std::size_t size() const { return extinct ? 0 : gaps.size() + 1; }

    void birth(std::size_t parent, double t) {
        gaps.insert(gaps.begin() + static_cast<std::ptrdiff_t>(parent), t);
    }

    void death(std::size_t i) {
        const std::size_t n = size();
        if (n == 1) {
            extinct = true;
            return;
        }
        if (i == 0) {
            gaps.erase(gaps.begin());
        } else if (i == n - 1) {
            gaps.pop_back();
        } else {
            gaps[i - 1] = std::min(gaps[i - 1], gaps[i]);
            gaps.erase(gaps.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
};

bool simulate_once(const ModelParams& params, RandomStream& rand,
                   PlanarPopulation& pop) {
    pop = PlanarPopulation{};
    const double total_rate = params.lambda + params.mu;
    double t = 0.0;
    while (true) {
        const double n = static_cast<double>(pop.size());
        t += -std::log1p(-rand.next_open01()) / (n * total_rate);
        if (t >= params.T) return true;
        const std::size_t who =
            std::min(static_cast<std::size_t>(rand.next_open01() * n),
                     pop.size() - 1);
        if (rand.next_open01() * total_rate < params.lambda) {
            pop.birth(who, t);
        } else {
            pop.death(who);
            if (pop.extinct) return false;
        }
    }
}

} // namespace

SampleGenealogy forward_bd_genealogy(const ModelParams& params, RandomStream& rand) {
    params.validate();
    const double r = params.growth_rate();
    if (std::exp(r * params.T) > 1e5)
        throw std::invalid_argument(
            "expected population e^{rT} too large for forward simulation");

    PlanarPopulation pop;
    int attempts = 0;
    while (true) {
        if (++attempts > kRejectionBudget)
            throw std::runtime_error(
                "forward simulation: rejection budget exhausted before N_T >= n");
        if (!simulate_once(params, rand, pop)) continue;
        if (pop.size() >= static_cast<std::size_t>(params.n)) break;
    }

    const std::size_t pop_n = pop.size();
    // sequential uniform sampling without replacement, preserving
    // planar order
    std::vector<std::size_t> chosen;
    chosen.reserve(params.n);
    std::size_t needed = static_cast<std::size_t>(params.n);
    for (std::size_t i = 0; i < pop_n && needed > 0; ++i) {
        if (rand.next_open01() * static_cast<double>(pop_n - i) <
            static_cast<double>(needed)) {
            chosen.push_back(i);
            --needed;
        }
    }

    SampleGenealogy g;
    g.regime = Regime::Exact;
    g.coordinate = Coordinate::H;
    g.T = params.T;
    g.population_size = pop_n;
    g.times.resize(params.n - 1);
    for (int j = 0; j + 1 < params.n; ++j) {
        double oldest = params.T;  // split time, absolute
        for (std::size_t i = chosen[j]; i < chosen[j + 1]; ++i)
            oldest = std::min(oldest, pop.gaps[i]);
        g.times[j] = params.T - oldest;
    }
    return g;
}

} // namespace cppsfs::mc
