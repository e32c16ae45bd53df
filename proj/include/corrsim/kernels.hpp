#pragma once

#include <cstddef>
#include <string>

// Low-level reduction kernels behind every similarity computation: dot
// products, sums, squared distances and column-wise pooling updates.
//
// Every variant (scalar, avx2, neon) implements the same fixed accumulation
// scheme: four independent lanes over the stride-4 body, reduced as
// (l0 + l1) + (l2 + l3), then the remainder elements added left to right.
// No FMA is used and the project builds with -ffp-contract=off, so all
// variants produce bit-identical results and the dispatch choice can never
// change any output. Tests assert exact equality between backends.

namespace corrsim::kernels {

struct backend {
    const char* name;
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*sqdist)(const double*, const double*, std::size_t);
    void (*acc_add)(double*, const double*, std::size_t);   // acc[i] += x[i]
    void (*acc_max)(double*, const double*, std::size_t);   // acc[i] = max(acc[i], x[i])
    void (*acc_min)(double*, const double*, std::size_t);   // acc[i] = min(acc[i], x[i])
};

extern const backend scalar_backend;
#if defined(__x86_64__) || defined(_M_X64)
extern const backend avx2_backend;
#endif
#if defined(__aarch64__)
extern const backend neon_backend;
#endif

// Active backend. Picked once at startup: CORRSIM_SIMD=scalar|avx2|neon if
// set (unavailable value falls back to scalar with a note on stderr),
// otherwise the widest instruction set the CPU and OS support.
const backend& active();
const char* active_name();

// Test hook: force a specific backend. Throws corrsim::error if this build
// or CPU does not support it.
void force(const std::string& name);

bool cpu_has_avx2();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline double sqdist(const double* a, const double* b, std::size_t n) { return active().sqdist(a, b, n); }
inline void acc_add(double* acc, const double* x, std::size_t n) { active().acc_add(acc, x, n); }
inline void acc_max(double* acc, const double* x, std::size_t n) { active().acc_max(acc, x, n); }
inline void acc_min(double* acc, const double* x, std::size_t n) { active().acc_min(acc, x, n); }

}  // namespace corrsim::kernels
