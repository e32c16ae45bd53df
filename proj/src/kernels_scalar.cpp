#include "corrsim/kernels.hpp"

// Reference kernels. The 4-lane blocked accumulation is the contract every
// SIMD variant must reproduce exactly; see kernels.hpp.

namespace corrsim::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        l0 += a[i] * b[i];
        l1 += a[i + 1] * b[i + 1];
        l2 += a[i + 2] * b[i + 2];
        l3 += a[i + 3] * b[i + 3];
    }
    double s = (l0 + l1) + (l2 + l3);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_scalar(const double* a, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        l0 += a[i];
        l1 += a[i + 1];
        l2 += a[i + 2];
        l3 += a[i + 3];
    }
    double s = (l0 + l1) + (l2 + l3);
    for (; i < n; ++i) s += a[i];
    return s;
}

double sqdist_scalar(const double* a, const double* b, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        const double d2 = a[i + 2] - b[i + 2];
        const double d3 = a[i + 3] - b[i + 3];
        l0 += d0 * d0;
        l1 += d1 * d1;
        l2 += d2 * d2;
        l3 += d3 * d3;
    }
    double s = (l0 + l1) + (l2 + l3);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void acc_add_scalar(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void acc_max_scalar(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > acc[i]) acc[i] = x[i];
}

void acc_min_scalar(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] < acc[i]) acc[i] = x[i];
}

}  // namespace

const backend scalar_backend = {
    "scalar",     dot_scalar,     sum_scalar,     sqdist_scalar,
    acc_add_scalar, acc_max_scalar, acc_min_scalar,
};

}  // namespace corrsim::kernels
