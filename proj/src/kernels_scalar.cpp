#include "cppsfs/kernels.hpp"

#include <algorithm>

namespace cppsfs::kernels {
namespace {

void heavy_tail_scalar(const double* p, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = p[i] / (1.0 - p[i]);
}

void conditional_time_scalar(const double* p, double q, double a, double* out,
                             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = p[i] * q / (1.0 + q * a * (1.0 - p[i]));
}

// Interior branch segments in H coordinates:
//   (min(h[i], h[i+k]) - max over h[i+1..i+k-1])^+
double window_sum_h_scalar(const double* h, std::size_t lo, std::size_t hi,
                           std::size_t k) {
    double total = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double outer = std::min(h[i], h[i + k]);
        double seg;
        if (k == 1) {
            seg = outer;  // empty inner window, heights are nonnegative
        } else {
            double inner = h[i + 1];
            for (std::size_t j = i + 2; j < i + k; ++j) inner = std::max(inner, h[j]);
            seg = outer - inner;
        }
        if (seg > 0.0) total += seg;
    }
    return total;
}

// Same segments in G = T - H coordinates (max/min exchanged).
double window_sum_g_scalar(const double* g, std::size_t lo, std::size_t hi,
                           std::size_t k) {
    double total = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double inner = g[i + 1];
        for (std::size_t j = i + 2; j < i + k; ++j) inner = std::min(inner, g[j]);
        double outer = std::max(g[i], g[i + k]);
        double seg = inner - outer;
        if (seg > 0.0) total += seg;
    }
    return total;
}

} // namespace

const Ops& scalar() {
    static const Ops ops{heavy_tail_scalar, conditional_time_scalar,
                         window_sum_h_scalar, window_sum_g_scalar, "scalar"};
    return ops;
}

} // namespace cppsfs::kernels
