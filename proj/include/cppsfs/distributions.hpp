#ifndef CPPSFS_DISTRIBUTIONS_HPP
#define CPPSFS_DISTRIBUTIONS_HPP

#include <cstdint>

#include "cppsfs/model.hpp"
#include "cppsfs/random.hpp"

// Exact densities, tail probabilities and inverse-CDF samplers for the
// random quantities appearing in the coalescent point process, in both
// the critical (r = 0) and supercritical (r > 0) regimes.  All samplers
// are rejection-free: one uniform in, one variate out.

namespace cppsfs::dist {

/// P(H >= T), the probability that a coalescence height exceeds the
/// horizon.  Clamped to [1e-300, 1) so downstream geometric parameters
/// stay in range when r*T is huge.
double survival_tail_delta(const ModelParams& params);

/// Density of the coalescence height H for the whole population.
double coalescence_pdf(const ModelParams& params, double t);

/// Density of H under Bernoulli(y) sampling of individuals.
double thinned_coalescence_pdf(const ModelParams& params, double y, double t);

/// CDF of the thinned height; closed form in both regimes.
double thinned_coalescence_cdf(const ModelParams& params, double y, double t);

/// Density of the mixing fraction Y on (0,1) for a uniform sample of
/// size n.
double sampling_fraction_pdf(const ModelParams& params, double y);

/// Conditional density of H given Y = y and H < T (the exact
/// coalescence-height law of the size-n sample).
double conditional_coalescence_pdf(const ModelParams& params, double y, double t);

/// Inverse of the conditional CDF above at probability p.
double conditional_coalescence_inverse(const ModelParams& params, double y, double p);

/// Draws Q with density n q^{n-1}/(1+q-q*delta)^{n+1} on (0, 1/delta);
/// Y = delta * Q.
double sample_scaled_fraction(const ModelParams& params, RandomStream& rand);

/// Deterministic inverse used by sample_scaled_fraction: p is the
/// uniform variate.
double scaled_fraction_inverse(int n, double delta, double p);

/// Draws U on (0, q) with density ((1+q*a)/q) / (1+a*u)^2 where
/// a = delta * lambda * T (a = delta*T in the unit-rate critical case).
double sample_pairwise_time_given_fraction(const ModelParams& params, double q,
                                           RandomStream& rand);

/// Closed-form inverse u = p*q/(1 + q*a*(1-p)).
double pairwise_time_inverse(double q, double a, double p);

/// Geometric gap on {1,2,...} with continuation (1-delta)(1-y).
std::uint64_t sample_gap(const ModelParams& params, double y, RandomStream& rand);

enum class LimitKind {
    Logistic,        ///< density e^u/(1+e^u)^2 on R
    ExponentialUnit, ///< mean-1 exponential (the variable W)
    HeavyTailU,      ///< density 1/(1+u)^2 on (0, inf)
    LimitFraction,   ///< Q_n with density n q^{n-1}/(1+q)^{n+1}
};

/// Samples one of the limit-regime primitives.  n is used only by
/// LimitFraction.
double sample_limit_primitive(LimitKind kind, RandomStream& rand, int n = 1);

/// Inverse-CDF forms of the limit primitives, exposed for tests.
double limit_primitive_inverse(LimitKind kind, double p, int n = 1);

} // namespace cppsfs::dist

#endif
