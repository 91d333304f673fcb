#include "cppsfs/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

// AVX2 variants.  Elementwise results are bit-identical to the scalar
// kernels: the same IEEE add/mul/div/min/max in the same per-element
// order, and window sums accumulate lane 0..3 sequentially so the
// reduction order matches the scalar loop exactly.

namespace cppsfs::kernels {
namespace {

void heavy_tail_avx2(const double* p, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        _mm256_storeu_pd(out + i, _mm256_div_pd(v, _mm256_sub_pd(one, v)));
    }
    for (; i < n; ++i) out[i] = p[i] / (1.0 - p[i]);
}

void conditional_time_avx2(const double* p, double q, double a, double* out,
                           std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vq = _mm256_set1_pd(q);
    const __m256d vqa = _mm256_set1_pd(q * a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        __m256d num = _mm256_mul_pd(v, vq);
        __m256d den = _mm256_add_pd(one, _mm256_mul_pd(vqa, _mm256_sub_pd(one, v)));
        _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
    }
    const double qa = q * a;
    for (; i < n; ++i) out[i] = p[i] * q / (1.0 + qa * (1.0 - p[i]));
}

double window_sum_h_avx2(const double* h, std::size_t lo, std::size_t hi,
                         std::size_t k) {
    const __m256d zero = _mm256_setzero_pd();
    double total = 0.0;
    double lane[4];
    std::size_t i = lo;
    for (; i + 4 <= hi; i += 4) {
        __m256d outer =
            _mm256_min_pd(_mm256_loadu_pd(h + i), _mm256_loadu_pd(h + i + k));
        __m256d seg;
        if (k == 1) {
            seg = outer;
        } else {
            __m256d inner = _mm256_loadu_pd(h + i + 1);
            for (std::size_t j = 2; j < k; ++j)
                inner = _mm256_max_pd(inner, _mm256_loadu_pd(h + i + j));
            seg = _mm256_sub_pd(outer, inner);
        }
        _mm256_storeu_pd(lane, _mm256_max_pd(seg, zero));
        total += lane[0];
        total += lane[1];
        total += lane[2];
        total += lane[3];
    }
    for (; i < hi; ++i) {
        double outer = std::min(h[i], h[i + k]);
        double seg;
        if (k == 1) {
            seg = outer;
        } else {
            double inner = h[i + 1];
            for (std::size_t j = i + 2; j < i + k; ++j) inner = std::max(inner, h[j]);
            seg = outer - inner;
        }
        if (seg > 0.0) total += seg;
    }
    return total;
}

double window_sum_g_avx2(const double* g, std::size_t lo, std::size_t hi,
                         std::size_t k) {
    const __m256d zero = _mm256_setzero_pd();
    double total = 0.0;
    double lane[4];
    std::size_t i = lo;
    for (; i + 4 <= hi; i += 4) {
        __m256d outer =
            _mm256_max_pd(_mm256_loadu_pd(g + i), _mm256_loadu_pd(g + i + k));
        __m256d inner = _mm256_loadu_pd(g + i + 1);
        for (std::size_t j = 2; j < k; ++j)
            inner = _mm256_min_pd(inner, _mm256_loadu_pd(g + i + j));
        __m256d seg = _mm256_sub_pd(inner, outer);
        _mm256_storeu_pd(lane, _mm256_max_pd(seg, zero));
        total += lane[0];
        total += lane[1];
        total += lane[2];
        total += lane[3];
    }
    for (; i < hi; ++i) {
        double inner = g[i + 1];
        for (std::size_t j = i + 2; j < i + k; ++j) inner = std::min(inner, g[j]);
        double seg = inner - std::max(g[i], g[i + k]);
        if (seg > 0.0) total += seg;
    }
    return total;
}

} // namespace

const Ops& avx2() {
    static const Ops ops{heavy_tail_avx2, conditional_time_avx2,
                         window_sum_h_avx2, window_sum_g_avx2, "avx2"};
    return ops;
}

bool avx2_available() { return __builtin_cpu_supports("avx2") != 0; }

} // namespace cppsfs::kernels
