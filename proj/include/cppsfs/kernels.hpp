#ifndef CPPSFS_KERNELS_HPP
#define CPPSFS_KERNELS_HPP

#include <cstddef>

// Data-parallel inner loops used by the samplers and the branch-length
// spectrum.  Scalar reference implementations live in kernels_scalar.cpp;
// AVX2 variants (elementwise identical: same IEEE operations in the same
// order, no FMA contraction) in kernels_avx2.cpp.  The active variant is
// selected once at startup from CPU features.

namespace cppsfs::kernels {

struct Ops {
    // out[i] = p[i] / (1 - p[i])
    void (*heavy_tail_transform)(const double* p, double* out, std::size_t n);
    // out[i] = p[i]*q / (1 + q*a*(1 - p[i]))
    void (*conditional_time_transform)(const double* p, double q, double a,
                                       double* out, std::size_t n);
    // sum over i in [lo, hi) of (min(h[i], h[i+k]) - max(h[i+1..i+k-1]))^+
    double (*spectrum_window_sum_h)(const double* h, std::size_t lo, std::size_t hi,
                                    std::size_t k);
    // sum over i in [lo, hi) of (min(g[i+1..i+k-1]) - max(g[i], g[i+k]))^+
    double (*spectrum_window_sum_g)(const double* g, std::size_t lo, std::size_t hi,
                                    std::size_t k);
    const char* name;
};

const Ops& scalar();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2();
bool avx2_available();
#endif

/// Best variant for the current CPU.
const Ops& active();

} // namespace cppsfs::kernels

#endif
