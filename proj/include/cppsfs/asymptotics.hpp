#ifndef CPPSFS_ASYMPTOTICS_HPP
#define CPPSFS_ASYMPTOTICS_HPP

#include <utility>
#include <vector>

#include "cppsfs/genealogy.hpp"

namespace cppsfs::asym {

/// h(m,n) = 1/m + 1/(m+1) + ... + 1/n.
double harmonic_sum(int m, int n);

enum class Integral { I1, I2, I3, I4 };

/// Closed forms for the four limiting-covariance building blocks.
/// Domains: I1 needs 2 <= k, k'; I2 needs k > k'; I3 ignores k';
/// I4 needs k >= k' + 2.
double integral_closed_form(Integral which, int k, int kp);

/// The same quantities by nested adaptive quadrature of the defining
/// double integrals over {y < z}, truncated where the logistic factors
/// are below underflow.  Independent oracle for integral_closed_form.
double integral_quadrature(Integral which, int k, int kp, double abs_tol = 1e-9);

/// V_{k,k'} by the direct four-branch closed form (k = k', k'+1, k'+2,
/// >= k'+3); extended to k < k' by symmetry.
double covariance_entry(int k, int kp);

/// V_{k,k'} assembled from the I1..I4 closed forms; must agree with
/// covariance_entry to 1e-10.
double covariance_entry_via_integrals(int k, int kp);

/// Symmetric limiting covariance of the standardized branch totals,
/// indexed by family sizes 2..K.
struct CovarianceMatrix {
    int K = 2;
    std::vector<double> entries;  ///< row-major (K-1) x (K-1)

    double at(int k, int kp) const { return entries[(k - 2) * (K - 1) + (kp - 2)]; }
    int dim() const { return K - 1; }
};

CovarianceMatrix covariance_matrix(int K);

/// Smallest eigenvalue of the matrix (PSD sanity check).
double min_eigenvalue(const CovarianceMatrix& m);

/// E[L^k_i] = 1/(r k(k-1)) for a single interior branch in the
/// supercritical limit.
double expected_supercritical_branch(int k, double r);

/// Truncated, rescaled branch values n*Ltilde^k_i for the critical CLT:
/// all U's capped at sqrt(n) * log log n.
struct TruncatedSpectrum {
    /// values[k-1][i-1] = n * Ltilde^k_i for 1 <= i <= n-k-1.
    std::vector<std::vector<double>> values;
    double cap = 0.0;
};

/// u_values holds U_1..U_{n-1} (heavy-tail scale); requires n >= 16 so
/// that log log n > 1.
TruncatedSpectrum truncated_branch_values(const std::vector<double>& u_values, int K);

/// Same construction with an explicit cap instead of sqrt(n) log log n.
TruncatedSpectrum truncated_branch_values(const std::vector<double>& u_values, int K,
                                          double cap);

/// Leading-order (mean, variance) of the truncated critical branch
/// values: (1/k, log n + 2 log log log n).  Leading terms only; the
/// O(1) remainders are not quantified.
std::pair<double, double> critical_moments(std::int64_t n, int k);

/// z_k = sqrt(n / log n) * (L^k / N_T - 1/k) for k = 1..K.
std::vector<double> standardize_critical(const BranchSpectrum& s,
                                         std::uint64_t population_size, int n, int K);

/// z_k = (r / sqrt(n)) * (L^k - n/(r k(k-1))) for k = 2..K.
std::vector<double> standardize_supercritical(const BranchSpectrum& s, int n,
                                              double r, int K);

} // namespace cppsfs::asym

#endif
