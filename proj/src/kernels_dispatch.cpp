#include "corrsim/kernels.hpp"
#include "corrsim/error.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

namespace corrsim::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    unsigned eax, ebx, ecx, edx;
    if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
    const bool osxsave = (ecx & (1u << 27)) != 0;
    const bool avx = (ecx & (1u << 28)) != 0;
    if (!osxsave || !avx) return false;
    unsigned lo, hi;
    __asm__("xgetbv" : "=a"(lo), "=d"(hi) : "c"(0));
    if ((lo & 0x6u) != 0x6u) return false;  // xmm+ymm state enabled by OS
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    return (ebx & (1u << 5)) != 0;
#else
    return false;
#endif
}

namespace {

const backend* lookup(const char* name) {
    if (std::strcmp(name, "scalar") == 0) return &scalar_backend;
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(name, "avx2") == 0 && cpu_has_avx2()) return &avx2_backend;
#endif
#if defined(__aarch64__)
    if (std::strcmp(name, "neon") == 0) return &neon_backend;
#endif
    return nullptr;
}

const backend* select() {
    if (const char* env = std::getenv("CORRSIM_SIMD")) {
        if (const backend* b = lookup(env)) return b;
        std::fprintf(stderr, "corrsim: CORRSIM_SIMD=%s unavailable, using scalar kernels\n", env);
        return &scalar_backend;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return &avx2_backend;
#endif
#if defined(__aarch64__)
    return &neon_backend;
#endif
    return &scalar_backend;
}

std::atomic<const backend*> g_active{nullptr};

}  // namespace

const backend& active() {
    const backend* b = g_active.load(std::memory_order_acquire);
    if (b == nullptr) {
        b = select();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

const char* active_name() { return active().name; }

void force(const std::string& name) {
    const backend* b = lookup(name.c_str());
    if (b == nullptr) throw error("kernel backend '" + name + "' is not available on this machine");
    g_active.store(b, std::memory_order_release);
}

}  // namespace corrsim::kernels
