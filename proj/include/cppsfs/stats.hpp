#ifndef CPPSFS_STATS_HPP
#define CPPSFS_STATS_HPP

#include <functional>
#include <vector>

namespace cppsfs::stats {

double normal_cdf(double x);

struct KsResult {
    double d = 0.0;
    double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
/// Requires at least 20 samples; p-value is the asymptotic
/// Kolmogorov distribution evaluated at (sqrt(m) + 0.12 + 0.11/sqrt(m)) D.
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value with the
/// effective sample size m1*m2/(m1+m2)).
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

struct MomentSummary {
    std::vector<double> means;
    std::vector<std::vector<double>> covariance;  ///< unbiased
    std::vector<double> std_errors;               ///< sqrt(var / R)
    std::size_t count = 0;
};

/// Column-wise moments of a rectangular table (rows = replicates).
MomentSummary empirical_moments(const std::vector<std::vector<double>>& rows);

/// Upper-tail p-value of a chi-square statistic with the given degrees
/// of freedom.
double chi_square_p_value(double statistic, int dof);

/// Smallest eigenvalue of a symmetric matrix given as nested rows.
double min_symmetric_eigenvalue(const std::vector<std::vector<double>>& m);

} // namespace cppsfs::stats

#endif
