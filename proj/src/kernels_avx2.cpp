#include "corrsim/kernels.hpp"

// AVX2 kernels. One 4-wide register carries the four accumulation lanes of
// the scalar reference; the horizontal reduction is (l0+l1)+(l2+l3) and the
// remainder runs in scalar order, so results are bit-identical to the scalar
// backend. This file is compiled with -mavx2 -mno-fma; max/min go through
// compare+blend so the scalar "update only when strictly greater/less"
// semantics (NaN and signed-zero behaviour included) are preserved.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace corrsim::kernels {
namespace {

inline double reduce4(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);        // l0 l1
    __m128d hi = _mm256_extractf128_pd(acc, 1);      // l2 l3
    __m128d s01 = _mm_add_sd(lo, _mm_unpackhi_pd(lo, lo));
    __m128d s23 = _mm_add_sd(hi, _mm_unpackhi_pd(hi, hi));
    return _mm_cvtsd_f64(_mm_add_sd(s01, s23));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double s = reduce4(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = reduce4(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double sqdist_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = reduce4(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void acc_add_avx2(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(acc + i, v);
    }
    for (; i < n; ++i) acc[i] += x[i];
}

void acc_max_avx2(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(acc + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d mask = _mm256_cmp_pd(vx, va, _CMP_GT_OQ);
        _mm256_storeu_pd(acc + i, _mm256_blendv_pd(va, vx, mask));
    }
    for (; i < n; ++i)
        if (x[i] > acc[i]) acc[i] = x[i];
}

void acc_min_avx2(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(acc + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d mask = _mm256_cmp_pd(vx, va, _CMP_LT_OQ);
        _mm256_storeu_pd(acc + i, _mm256_blendv_pd(va, vx, mask));
    }
    for (; i < n; ++i)
        if (x[i] < acc[i]) acc[i] = x[i];
}

}  // namespace

const backend avx2_backend = {
    "avx2",       dot_avx2,     sum_avx2,     sqdist_avx2,
    acc_add_avx2, acc_max_avx2, acc_min_avx2,
};

}  // namespace corrsim::kernels

#endif  // x86_64
