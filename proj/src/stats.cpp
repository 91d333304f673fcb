#include "cppsfs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace cppsfs::stats {

namespace {

// P(K > x) for the Kolmogorov distribution, alternating series.
double kolmogorov_tail(double x) {
    if (x < 0.2) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-12) break;
    }
    const double p = 2.0 * sum;
    return std::clamp(p, 0.0, 1.0);
}

double ks_p_value(double d, double effective_m) {
    // Stephens' finite-sample correction to the asymptotic distribution
    const double s = std::sqrt(effective_m);
    return kolmogorov_tail((s + 0.12 + 0.11 / s) * d);
}

// regularized lower incomplete gamma P(a, x)
double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series expansion
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

} // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf) {
    const std::size_t m = samples.size();
    if (m < 20) throw std::invalid_argument("ks_test requires >= 20 samples");
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max((i + 1.0) / m - f, f - static_cast<double>(i) / m));
    }
    return {d, ks_p_value(d, static_cast<double>(m))};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.size() < 20 || b.size() < 20)
        throw std::invalid_argument("two-sample ks_test requires >= 20 samples each");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t m1 = a.size(), m2 = b.size();
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < m1 && j < m2) {
        const double x = std::min(a[i], b[j]);
        while (i < m1 && a[i] <= x) ++i;
        while (j < m2 && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / m1 -
                                 static_cast<double>(j) / m2));
    }
    const double eff = static_cast<double>(m1) * m2 / (m1 + m2);
    return {d, ks_p_value(d, eff)};
}

MomentSummary empirical_moments(const std::vector<std::vector<double>>& rows) {
    const std::size_t r = rows.size();
    if (r < 2) throw std::invalid_argument("need at least 2 rows");
    const std::size_t c = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != c) throw std::invalid_argument("ragged table");

    MomentSummary out;
    out.count = r;
    out.means.assign(c, 0.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < c; ++j) out.means[j] += row[j];
    for (auto& m : out.means) m /= static_cast<double>(r);

    out.covariance.assign(c, std::vector<double>(c, 0.0));
    for (const auto& row : rows)
        for (std::size_t j = 0; j < c; ++j) {
            const double dj = row[j] - out.means[j];
            for (std::size_t l = j; l < c; ++l)
                out.covariance[j][l] += dj * (row[l] - out.means[l]);
        }
    for (std::size_t j = 0; j < c; ++j)
        for (std::size_t l = j; l < c; ++l) {
            out.covariance[j][l] /= static_cast<double>(r - 1);
            out.covariance[l][j] = out.covariance[j][l];
        }

    out.std_errors.resize(c);
    for (std::size_t j = 0; j < c; ++j)
        out.std_errors[j] = std::sqrt(out.covariance[j][j] / static_cast<double>(r));
    return out;
}

double chi_square_p_value(double statistic, int dof) {
    if (dof < 1) throw std::invalid_argument("dof must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return 1.0 - gamma_p(0.5 * dof, 0.5 * statistic);
}

double min_symmetric_eigenvalue(const std::vector<std::vector<double>>& m) {
    const int d = static_cast<int>(m.size());
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = m[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return es.eigenvalues().minCoeff();
}

} // namespace cppsfs::stats
