#include "cppsfs/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "cppsfs/quadrature.hpp"

namespace cppsfs::asym {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// sum_{j=1}^{m} 1/j^2 (0 for m <= 0)
double inv_square_sum(int m) {
    double s = 0.0;
    for (int j = m; j >= 1; --j) s += 1.0 / (static_cast<double>(j) * j);
    return s;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Every double integral is over the region {y < z} with integrands
// built from logistic factors e^{ay}/(1+e^y)^b.  These are smooth with
// exponentially small tails, so we integrate directly in the (y, z)
// coordinates on a truncated box; the discarded tail mass is below
// e^{-kTrunc} times bounded factors.
constexpr double kTrunc = 70.0;

// e^{ay} / (1+e^y)^b, overflow-safe for large |y|
double logistic_factor(double y, double a, double b) {
    const double log1pe = y > 0.0 ? y + std::log1p(std::exp(-y))
                                  : std::log1p(std::exp(y));
    return std::exp(a * y - b * log1pe);
}

double logistic_cdf(double y) { return 1.0 / (1.0 + std::exp(-y)); }

// integral of f(y, z) over {-kTrunc < y < z < kTrunc}
double nested(const std::function<double(double, double)>& f, double abs_tol) {
    const double inner_tol = abs_tol * 1e-3 / (2.0 * kTrunc);
    return quad::integrate(
        [&](double z) {
            return quad::integrate([&, z](double y) { return f(y, z); }, -kTrunc,
                                   z, inner_tol);
        },
        -kTrunc, kTrunc, abs_tol);
}

// First term of I1 on {y < z}; the second term is this with k and k'
// swapped.
double i1_half(int k, int kp, double abs_tol) {
    return nested(
        [=](double y, double z) {
            return logistic_factor(y, 2, k + 1) * logistic_factor(z, 1, kp);
        },
        abs_tol);
}

} // namespace

double harmonic_sum(int m, int n) {
    require(1 <= m && m <= n, "harmonic_sum requires 1 <= m <= n");
    double s = 0.0;
    for (int j = n; j >= m; --j) s += 1.0 / j;
    return s;
}

double integral_closed_form(Integral which, int k, int kp) {
    switch (which) {
        case Integral::I1:
            require(k >= 2 && kp >= 2, "I1 requires k, k' >= 2");
            return 1.0 / (static_cast<double>(k - 1) * (kp - 1) * (k + kp - 1));
        case Integral::I2:
            require(kp >= 2 && k > kp, "I2 requires k > k' >= 2");
            if (k == kp + 1)
                return 0.5 / (k - 2) + 0.5 / (k - 1) - kPi2 / 6.0 +
                       inv_square_sum(k - 2);
            return static_cast<double>(k + kp - 2) /
                       (static_cast<double>(kp - 1) * (k - 1) * (k - kp) *
                        (k - kp + 1)) -
                   2.0 * harmonic_sum(kp, k - 2) /
                       (static_cast<double>(k - kp - 1) * (k - kp) * (k - kp + 1));
        case Integral::I3:
            require(k >= 2, "I3 requires k >= 2");
            return kPi2 / 3.0 - 2.0 / (k - 1) - 2.0 * inv_square_sum(k - 2);
        case Integral::I4:
            require(kp >= 2 && k >= kp + 2, "I4 requires k >= k' + 2");
            if (k == kp + 2)
                return 1.0 / (6.0 * (k - 3)) - 5.0 / (6.0 * (k - 2)) -
                       1.0 / (3.0 * (k - 1)) + kPi2 / 6.0 - inv_square_sum(k - 2);
            return 1.0 / (static_cast<double>(kp - 1) * (k - kp) * (k - kp + 1)) +
                   6.0 * harmonic_sum(kp, k - 2) /
                       (static_cast<double>(k - kp - 2) * (k - kp - 1) * (k - kp) *
                        (k - kp + 1)) -
                   1.0 / (static_cast<double>(kp) * (k - kp - 2) * (k - kp - 1)) -
                   2.0 / (static_cast<double>(k - 1) * (k - kp - 1) * (k - kp) *
                          (k - kp + 1));
    }
    throw std::invalid_argument("unknown integral");
}

double integral_quadrature(Integral which, int k, int kp, double abs_tol) {
    switch (which) {
        case Integral::I1:
            require(k >= 2 && kp >= 2, "I1 requires k, k' >= 2");
            return i1_half(k, kp, 0.5 * abs_tol) + i1_half(kp, k, 0.5 * abs_tol);
        case Integral::I2:
            require(kp >= 2 && k > kp, "I2 requires k > k' >= 2");
            return nested(
                [=](double y, double z) {
                    return logistic_factor(y, 2, k - kp + 1) *
                           logistic_factor(z, 0, kp - 1) *
                           (logistic_cdf(z) - logistic_cdf(y));
                },
                abs_tol);
        case Integral::I3:
            require(k >= 2, "I3 requires k >= 2");
            // the two terms of I3 coincide after renaming the variables
            return 2.0 * nested(
                             [=](double y, double z) {
                                 return logistic_factor(y, 2, 2) *
                                        logistic_factor(z, 0, k - 1);
                             },
                             0.5 * abs_tol);
        case Integral::I4:
            require(kp >= 2 && k >= kp + 2, "I4 requires k >= k' + 2");
            return nested(
                [=](double y, double z) {
                    const double d = logistic_cdf(z) - logistic_cdf(y);
                    return logistic_factor(y, 2, k - kp) *
                           logistic_factor(z, 0, kp - 1) * d * d;
                },
                abs_tol);
    }
    throw std::invalid_argument("unknown integral");
}

double covariance_entry(int k, int kp) {
    require(k >= 2 && kp >= 2, "covariance_entry requires k, k' >= 2");
    if (k < kp) std::swap(k, kp);
    if (k == kp)
        return 2.0 / (static_cast<double>(k - 1) * (k - 1) * (2 * k - 1)) -
               static_cast<double>(2 * k + 1) /
                   (static_cast<double>(k) * k * (k - 1) * (k - 1)) -
               2.0 / (k - 1) + kPi2 / 3.0 - 2.0 * inv_square_sum(k - 2);
    if (k == kp + 1)
        return static_cast<double>(2 * k - 1) /
                   (static_cast<double>(k - 1) * (k - 1)) -
               kPi2 / 3.0 + 2.0 * inv_square_sum(k - 2);
    if (k == kp + 2)
        return -static_cast<double>(2 * k - 1) * (2 * k - 1) /
                   (2.0 * k * (k - 1) * (2 * k - 3)) +
               kPi2 / 6.0 - inv_square_sum(k - 2);
    return 2.0 / (static_cast<double>(k - 1) * (kp - 1) * (k + kp - 1)) -
           static_cast<double>(k + kp + 1) /
               (static_cast<double>(k) * (k - 1) * kp * (kp - 1)) -
           1.0 / (static_cast<double>(kp) * (k - kp - 2)) +
           1.0 / (static_cast<double>(kp - 1) * (k - kp)) +
           2.0 * harmonic_sum(kp, k - 2) /
               (static_cast<double>(k - kp - 2) * (k - kp - 1) * (k - kp));
}

double covariance_entry_via_integrals(int k, int kp) {
    require(k >= 2 && kp >= 2, "covariance requires k, k' >= 2");
    if (k < kp) std::swap(k, kp);
    const double base = -static_cast<double>(k + kp + 1) /
                        (static_cast<double>(k) * (k - 1) * kp * (kp - 1));
    const double i1 = integral_closed_form(Integral::I1, k, kp);
    if (k == kp) return base + 2.0 * i1 + integral_closed_form(Integral::I3, k, kp);
    const double i2 = integral_closed_form(Integral::I2, k, kp);
    if (k == kp + 1) return base + 2.0 * i1 + 2.0 * i2;
    return base + 2.0 * i1 + 2.0 * i2 +
           (k - kp - 1) * integral_closed_form(Integral::I4, k, kp);
}

CovarianceMatrix covariance_matrix(int K) {
    require(K >= 2, "covariance_matrix requires K >= 2");
    CovarianceMatrix m;
    m.K = K;
    m.entries.assign(static_cast<std::size_t>(K - 1) * (K - 1), 0.0);
    for (int k = 2; k <= K; ++k)
        for (int kp = 2; kp <= k; ++kp) {
            const double v = covariance_entry(k, kp);
            m.entries[(k - 2) * (K - 1) + (kp - 2)] = v;
            m.entries[(kp - 2) * (K - 1) + (k - 2)] = v;
        }
    return m;
}

double min_eigenvalue(const CovarianceMatrix& m) {
    const int d = m.dim();
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = m.entries[i * d + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return es.eigenvalues().minCoeff();
}

double expected_supercritical_branch(int k, double r) {
    require(k >= 2, "expected branch length requires k >= 2");
    require(r > 0.0, "expected branch length requires r > 0");
    return 1.0 / (r * k * (k - 1));
}

TruncatedSpectrum truncated_branch_values(const std::vector<double>& u_values,
                                          int K) {
    const int n = static_cast<int>(u_values.size()) + 1;
    require(n >= 16, "truncation requires n >= 16");
    return truncated_branch_values(
        u_values, K,
        std::sqrt(static_cast<double>(n)) *
            std::log(std::log(static_cast<double>(n))));
}

TruncatedSpectrum truncated_branch_values(const std::vector<double>& u_values,
                                          int K, double cap) {
    const int n = static_cast<int>(u_values.size()) + 1;
    require(n >= 16, "truncation requires n >= 16");
    require(K >= 1 && K <= n - 2, "K must be in [1, n-2]");
    require(cap > 0.0, "cap must be positive");
    TruncatedSpectrum out;
    out.cap = cap;
    out.values.resize(K);
    // u_values[i-1] = U_i; interior branches only, 1 <= i <= n-k-1
    for (int k = 1; k <= K; ++k) {
        auto& row = out.values[k - 1];
        row.assign(n - k - 1, 0.0);
        for (int i = 1; i <= n - k - 1; ++i) {
            double outer = std::min(
                {u_values[i - 1], u_values[i + k - 1], out.cap});
            double inner = 0.0;
            for (int j = i + 1; j < i + k; ++j)
                inner = std::max(inner, u_values[j - 1]);
            const double v = outer - inner;
            row[i - 1] = v > 0.0 ? v : 0.0;
        }
    }
    return out;
}

std::pair<double, double> critical_moments(std::int64_t n, int k) {
    require(n >= 16, "critical_moments requires n >= 16");
    require(k >= 1, "critical_moments requires k >= 1");
    const double ln = std::log(static_cast<double>(n));
    return {1.0 / k, ln + 2.0 * std::log(std::log(ln))};
}

std::vector<double> standardize_critical(const BranchSpectrum& s,
                                         std::uint64_t population_size, int n,
                                         int K) {
    require(population_size >= static_cast<std::uint64_t>(n),
            "population size must be >= n");
    require(K >= 1 && K <= s.max_k(), "K exceeds available spectrum");
    const double scale = std::sqrt(n / std::log(static_cast<double>(n)));
    std::vector<double> z(K);
    for (int k = 1; k <= K; ++k)
        z[k - 1] = scale * (s.total(k) / static_cast<double>(population_size) -
                            1.0 / k);
    return z;
}

std::vector<double> standardize_supercritical(const BranchSpectrum& s, int n,
                                              double r, int K) {
    require(r > 0.0, "supercritical standardization requires r > 0");
    require(K >= 2 && K <= s.max_k(), "K must be in [2, max_k]");
    const double scale = r / std::sqrt(static_cast<double>(n));
    std::vector<double> z(K - 1);
    for (int k = 2; k <= K; ++k)
        z[k - 2] = scale * (s.total(k) - n / (r * k * (k - 1)));
    return z;
}

} // namespace cppsfs::asym
