#include "cppsfs/distributions.hpp"

#include <cmath>

namespace cppsfs::dist {

namespace {
constexpr double kDeltaFloor = 1e-300;
}

double survival_tail_delta(const ModelParams& params) {
    params.validate();
    double delta;
    if (params.effectively_critical()) {
        delta = 1.0 / (1.0 + params.lambda * params.T);
    } else {
        const double r = params.growth_rate();
        // e^{-rT} terms via expm1 so the formula stays accurate near r = 0
        const double e = std::expm1(-r * params.T);  // e^{-rT} - 1, in (-1, 0]
        delta = r * (1.0 + e) / (-params.lambda * e + r * (1.0 + e));
    }
    if (delta < kDeltaFloor) delta = kDeltaFloor;
    if (delta >= 1.0) delta = std::nextafter(1.0, 0.0);
    return delta;
}

double coalescence_pdf(const ModelParams& params, double t) {
    params.validate();
    if (t < 0.0) return 0.0;
    if (params.effectively_critical()) {
        const double d = 1.0 + params.lambda * t;
        return params.lambda / (d * d);
    }
    const double r = params.growth_rate();
    const double e = std::expm1(-r * t);
    const double den = r - params.mu * e;  // lambda - mu e^{-rt}
    return params.lambda * r * r * (1.0 + e) / (den * den);
}

double thinned_coalescence_pdf(const ModelParams& params, double y, double t) {
    params.validate();
    if (!(y > 0.0) || y > 1.0) throw std::invalid_argument("y must be in (0,1]");
    if (t < 0.0) return 0.0;
    const double yl = y * params.lambda;
    if (params.effectively_critical()) {
        const double d = 1.0 + yl * t;
        return yl / (d * d);
    }
    const double r = params.growth_rate();
    const double e = std::expm1(-r * t);
    const double den = r + (r - yl) * e;  // y*lambda + (r - y*lambda) e^{-rt}
    return yl * r * r * (1.0 + e) / (den * den);
}

double thinned_coalescence_cdf(const ModelParams& params, double y, double t) {
    params.validate();
    if (!(y > 0.0) || y > 1.0) throw std::invalid_argument("y must be in (0,1]");
    if (t <= 0.0) return 0.0;
    const double yl = y * params.lambda;
    if (params.effectively_critical()) return yl * t / (1.0 + yl * t);
    const double r = params.growth_rate();
    const double e = std::expm1(-r * t);
    return -yl * e / (r + (r - yl) * e);
}

double conditional_coalescence_pdf(const ModelParams& params, double y, double t) {
    if (t <= 0.0 || t >= params.T) return 0.0;
    return thinned_coalescence_pdf(params, y, t) /
           thinned_coalescence_cdf(params, y, params.T);
}

double conditional_coalescence_inverse(const ModelParams& params, double y, double p) {
    const double yl = y * params.lambda;
    const double c = p * thinned_coalescence_cdf(params, y, params.T);
    if (params.effectively_critical()) return c / (yl * (1.0 - c));
    const double r = params.growth_rate();
    // w = e^{-rt} solves the linear equation from F_{H_y}(t) = c
    return -std::log1p(-c * r / (yl + c * (r - yl))) / r;
}

double sampling_fraction_pdf(const ModelParams& params, double y) {
    params.validate();
    if (!(y > 0.0) || !(y < 1.0)) return 0.0;
    const double delta = survival_tail_delta(params);
    const int n = params.n;
    const double den = y + delta - y * delta;
    return std::exp(std::log(static_cast<double>(n) * delta) +
                    (n - 1) * std::log(y) - (n + 1) * std::log(den));
}

double scaled_fraction_inverse(int n, double delta, double p) {
    const double u = std::pow(p, 1.0 / n);
    return u / (1.0 - (1.0 - delta) * u);
}

double sample_scaled_fraction(const ModelParams& params, RandomStream& rand) {
    params.validate();
    return scaled_fraction_inverse(params.n, survival_tail_delta(params),
                                   rand.next_open01());
}

double pairwise_time_inverse(double q, double a, double p) {
    if (!(q > 0.0)) throw std::invalid_argument("q must be > 0");
    return p * q / (1.0 + q * a * (1.0 - p));
}

double sample_pairwise_time_given_fraction(const ModelParams& params, double q,
                                           RandomStream& rand) {
    const double a = survival_tail_delta(params) * params.lambda * params.T;
    return pairwise_time_inverse(q, a, rand.next_open01());
}

std::uint64_t sample_gap(const ModelParams& params, double y, RandomStream& rand) {
    if (!(y > 0.0) || y > 1.0) throw std::invalid_argument("y must be in (0,1]");
    const double delta = survival_tail_delta(params);
    const double p = rand.next_open01();
    if (y == 1.0) return 1;
    // log of the continuation probability (1-delta)(1-y), kept accurate
    // when both factors are close to 1
    const double log_cont = std::log1p(-delta) + std::log1p(-y);
    if (!(log_cont < 0.0)) return 1;
    const double k = std::ceil(std::log1p(-p) / log_cont);
    if (k < 1.0) return 1;
    return static_cast<std::uint64_t>(k);
}

double limit_primitive_inverse(LimitKind kind, double p, int n) {
    switch (kind) {
        case LimitKind::Logistic:
            return std::log(p / (1.0 - p));
        case LimitKind::ExponentialUnit:
            return -std::log1p(-p);
        case LimitKind::HeavyTailU:
            return p / (1.0 - p);
        case LimitKind::LimitFraction: {
            const double u = std::pow(p, 1.0 / n);
            return u / (1.0 - u);
        }
    }
    throw std::invalid_argument("unknown limit primitive");
}

double sample_limit_primitive(LimitKind kind, RandomStream& rand, int n) {
    return limit_primitive_inverse(kind, rand.next_open01(), n);
}

} // namespace cppsfs::dist
