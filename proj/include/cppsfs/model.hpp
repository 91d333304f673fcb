#ifndef CPPSFS_MODEL_HPP
#define CPPSFS_MODEL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace cppsfs {

/// Birth-death model parameters.  Only critical (lambda == mu) and
/// supercritical (lambda > mu) processes are supported.
struct ModelParams {
    double lambda = 1.0;  ///< birth rate, > 0
    double mu = 1.0;      ///< death rate, >= 0
    double T = 1.0;       ///< sampling horizon, > 0
    int n = 2;            ///< sample size, >= 1
    double nu = 0.0;      ///< mutation rate per unit branch length, >= 0

    double growth_rate() const noexcept { return lambda - mu; }

    /// |r|*T below this is treated as critical; the closed forms are
    /// continuous across r = 0 but lose precision in floating point.
    static constexpr double kCriticalCrossover = 1e-12;

    bool effectively_critical() const noexcept {
        return std::abs(growth_rate()) * T < kCriticalCrossover;
    }

    void validate() const {
        if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
        if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
        if (lambda < mu) throw std::invalid_argument("subcritical (lambda < mu) not supported");
        if (!(T > 0.0)) throw std::invalid_argument("T must be > 0");
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    }
};

} // namespace cppsfs

#endif
