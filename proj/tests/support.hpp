#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "corrsim/matrix.hpp"

// Shared test helpers: a portable seeded generator, naive reference
// implementations for the fast paths, a small symmetric eigensolver, and
// process helpers for driving the CLI binary.

namespace testsup {

struct rng64 {
    std::uint64_t state;
    explicit rng64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double normal() {
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
};

inline std::vector<double> normal_vec(rng64& g, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = g.normal();
    return v;
}

inline std::vector<double> uniform_vec(rng64& g, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = g.uniform();
    return v;
}

inline corrsim::matrix normal_matrix(rng64& g, std::size_t rows, std::size_t cols) {
    corrsim::matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = g.normal();
    return m;
}

// Tau-b by direct pair enumeration.
inline double kendall_naive(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double conc = 0, disc = 0, tie_x = 0, tie_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0 && dy == 0) continue;
            if (dx == 0) {
                ++tie_x;
            } else if (dy == 0) {
                ++tie_y;
            } else if ((dx > 0) == (dy > 0)) {
                ++conc;
            } else {
                ++disc;
            }
        }
    const double den =
        std::sqrt(conc + disc + tie_x) * std::sqrt(conc + disc + tie_y);
    return (conc - disc) / den;
}

// (d-1)^-2 Tr(KHLH) with H materialized.
inline double hsic_naive(const corrsim::matrix& k, const corrsim::matrix& l) {
    const std::size_t d = k.rows();
    corrsim::matrix h(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            h.at(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(d);
    auto mul = [d](const corrsim::matrix& a, const corrsim::matrix& b) {
        corrsim::matrix c(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < d; ++t) s += a.at(i, t) * b.at(t, j);
                c.at(i, j) = s;
            }
        return c;
    };
    const auto prod = mul(mul(mul(k, h), l), h);
    double trace = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace += prod.at(i, i);
    const double dm1 = static_cast<double>(d) - 1.0;
    return trace / (dm1 * dm1);
}

// Squared distance correlation of two univariate samples, by direct double
// centering of the |xi - xj| matrices.
inline double dcor2_naive(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    auto centered = [n](const std::vector<double>& v) {
        corrsim::matrix e(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e.at(i, j) = std::fabs(v[i] - v[j]);
        std::vector<double> rmean(n, 0.0);
        double grand = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) rmean[i] += e.at(i, j);
            grand += rmean[i];
            rmean[i] /= static_cast<double>(n);
        }
        grand /= static_cast<double>(n) * static_cast<double>(n);
        corrsim::matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a.at(i, j) = e.at(i, j) - rmean[i] - rmean[j] + grand;
        return a;
    };
    const auto a = centered(x), b = centered(y);
    double vxy = 0, vxx = 0, vyy = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            vxy += a.at(i, j) * b.at(i, j);
            vxx += a.at(i, j) * a.at(i, j);
            vyy += b.at(i, j) * b.at(i, j);
        }
    return vxy / std::sqrt(vxx * vyy);
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(corrsim::matrix a) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a.at(p, q) == 0.0) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * a.at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i);
    return eig;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Per-process scratch directory so parallel test binaries never collide.
inline std::string tmp_dir() {
    static const std::string dir = [] {
        const auto p = std::filesystem::temp_directory_path() /
                       ("corrsim_tests_" + std::to_string(::getpid()));
        std::filesystem::create_directories(p);
        return p.string();
    }();
    return dir;
}

inline std::string src_dir() {
    const char* p = std::getenv("CORRSIM_SRC");
    return p ? p : ".";
}

inline std::string cli_path() {
    const char* p = std::getenv("CORRSIM_CLI");
    return p ? p : "./corrsim";
}

struct cmd_result {
    int exit_code;
    std::string out;  // stdout only
};

inline cmd_result run_cmd(const std::string& cmd) {
    std::FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, out};
}

inline std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'')
            q += "'\\''";
        else
            q += c;
    }
    q += "'";
    return q;
}

}  // namespace testsup
