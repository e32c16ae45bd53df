#include "corrsim/kernels.hpp"

// NEON kernels (aarch64). Two float64x2 registers carry the four scalar
// accumulation lanes: q0 = (l0, l1), q1 = (l2, l3). vaddvq_f64 performs the
// in-pair sum, so the reduction is (l0+l1)+(l2+l3) exactly as in the scalar
// reference; max/min use compare+select to keep strict-greater/less update
// semantics.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace corrsim::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t q0 = vdupq_n_f64(0.0), q1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        q0 = vaddq_f64(q0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        q1 = vaddq_f64(q1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double s = vaddvq_f64(q0) + vaddvq_f64(q1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_neon(const double* a, std::size_t n) {
    float64x2_t q0 = vdupq_n_f64(0.0), q1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        q0 = vaddq_f64(q0, vld1q_f64(a + i));
        q1 = vaddq_f64(q1, vld1q_f64(a + i + 2));
    }
    double s = vaddvq_f64(q0) + vaddvq_f64(q1);
    for (; i < n; ++i) s += a[i];
    return s;
}

double sqdist_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t q0 = vdupq_n_f64(0.0), q1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        q0 = vaddq_f64(q0, vmulq_f64(d0, d0));
        q1 = vaddq_f64(q1, vmulq_f64(d1, d1));
    }
    double s = vaddvq_f64(q0) + vaddvq_f64(q1);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void acc_add_neon(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(x + i)));
    for (; i < n; ++i) acc[i] += x[i];
}

void acc_max_neon(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t va = vld1q_f64(acc + i);
        float64x2_t vx = vld1q_f64(x + i);
        uint64x2_t m = vcgtq_f64(vx, va);
        vst1q_f64(acc + i, vbslq_f64(m, vx, va));
    }
    for (; i < n; ++i)
        if (x[i] > acc[i]) acc[i] = x[i];
}

void acc_min_neon(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t va = vld1q_f64(acc + i);
        float64x2_t vx = vld1q_f64(x + i);
        uint64x2_t m = vcltq_f64(vx, va);
        vst1q_f64(acc + i, vbslq_f64(m, vx, va));
    }
    for (; i < n; ++i)
        if (x[i] < acc[i]) acc[i] = x[i];
}

}  // namespace

const backend neon_backend = {
    "neon",       dot_neon,     sum_neon,     sqdist_neon,
    acc_add_neon, acc_max_neon, acc_min_neon,
};

}  // namespace corrsim::kernels

#endif  // aarch64
