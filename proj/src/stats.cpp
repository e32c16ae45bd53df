#include "corrsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "corrsim/error.hpp"
#include "corrsim/kernels.hpp"

namespace corrsim::stats {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw degenerate_sample("paired sample length mismatch: " + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()));
    if (x.size() < 2) throw degenerate_sample("paired sample needs at least 2 observations");
}

// Merge sort on y counting strict inversions (pairs i < j with y[i] > y[j]).
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& tmp,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, tmp, lo, mid) + count_inversions(v, tmp, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
            tmp[k++] = v[i++];
        } else {
            inv += mid - i;
            tmp[k++] = v[j++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
    return inv;
}

}  // namespace

double mean(std::span<const double> v) {
    if (v.empty()) throw degenerate_sample("mean of empty sample");
    return kernels::sum(v.data(), v.size()) / static_cast<double>(v.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();
    const double mx = mean(x), my = mean(y);
    std::vector<double> cx(n), cy(n);
    for (std::size_t i = 0; i < n; ++i) {
        cx[i] = x[i] - mx;
        cy[i] = y[i] - my;
    }
    const double sxx = kernels::dot(cx.data(), cx.data(), n);
    const double syy = kernels::dot(cy.data(), cy.data(), n);
    if (sxx <= 0.0 || syy <= 0.0) throw degenerate_sample("pearson: zero variance");
    const double sxy = kernels::dot(cx.data(), cy.data(), n);
    return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

double cosine(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const double nx = kernels::dot(x.data(), x.data(), x.size());
    const double ny = kernels::dot(y.data(), y.data(), y.size());
    if (nx <= 0.0 || ny <= 0.0) throw degenerate_sample("cosine: zero-norm input");
    return kernels::dot(x.data(), y.data(), x.size()) / (std::sqrt(nx) * std::sqrt(ny));
}

std::vector<double> ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::vector<double> rx = ranks(x), ry = ranks(y);
    return pearson(rx, ry);
}

double kendall(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    const auto pairs = [](std::uint64_t t) { return t * (t - 1) / 2; };
    const std::uint64_t n0 = pairs(n);
    std::uint64_t n1 = 0, n3 = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::uint64_t joint = 1;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) {
            ++j;
            if (y[order[j]] == y[order[j - 1]])
                ++joint;
            else {
                n3 += pairs(joint);
                joint = 1;
            }
        }
        n3 += pairs(joint);
        n1 += pairs(j - i + 1);
        i = j + 1;
    }

    std::vector<double> ysorted(n), tmp(n);
    for (std::size_t k = 0; k < n; ++k) ysorted[k] = y[order[k]];
    const std::uint64_t swaps = count_inversions(ysorted, tmp, 0, n);

    // ysorted is now sorted; count y ties from it.
    std::uint64_t n2 = 0;
    i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && ysorted[j + 1] == ysorted[i]) ++j;
        n2 += pairs(j - i + 1);
        i = j + 1;
    }

    if (n0 == n1 || n0 == n2) throw degenerate_sample("kendall: constant input");
    const double num = static_cast<double>(n0) - static_cast<double>(n1) -
                       static_cast<double>(n2) + static_cast<double>(n3) -
                       2.0 * static_cast<double>(swaps);
    const double den = std::sqrt(static_cast<double>(n0 - n1)) *
                       std::sqrt(static_cast<double>(n0 - n2));
    return num / den;
}

std::vector<double> winsorize(std::span<const double> v, double p) {
    if (p < 0.0 || p >= 0.5) throw error("winsorization level must be in [0, 0.5)");
    const std::size_t n = v.size();
    if (n == 0) throw degenerate_sample("winsorize: empty sample");
    // ceil with a small backoff: 0.05 * 20 evaluates to just above 1 in
    // binary floating point, and the rule means h = 1 there.
    const auto h = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - 1e-9));
    if (h == 0) return {v.begin(), v.end()};
    if (2 * h >= n) throw degenerate_sample("winsorize: level too high for sample size");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const double lo = s[h], hi = s[n - 1 - h];
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(v[i], lo, hi);
    return out;
}

double winsorized_pearson(std::span<const double> x, std::span<const double> y, double p) {
    check_pair(x, y);
    const std::vector<double> wx = winsorize(x, p), wy = winsorize(y, p);
    return pearson(wx, wy);
}

double skewness(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2) throw degenerate_sample("skewness needs at least 2 observations");
    const double m = mean(v);
    double m2 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = v[i] - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    if (m2 <= 0.0) throw degenerate_sample("skewness: zero variance");
    return m3 / (m2 * std::sqrt(m2));
}

double median(std::span<const double> v) {
    if (v.empty()) throw degenerate_sample("median of empty sample");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return s[(s.size() - 1) / 2];
}

}  // namespace corrsim::stats
