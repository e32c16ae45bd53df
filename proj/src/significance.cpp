#include "corrsim/significance.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "corrsim/error.hpp"
#include "corrsim/parallel.hpp"
#include "corrsim/rng.hpp"
#include "corrsim/stats.hpp"

namespace corrsim {

paired_scores make_paired(const subtask_report& a, const subtask_report& b) {
    if (a.subtask_id != b.subtask_id)
        throw error("subtask mismatch: " + a.subtask_id + " vs " + b.subtask_id);
    if (a.pairs.size() != b.pairs.size())
        throw error("pair count mismatch on " + a.subtask_id + ": " +
                    std::to_string(a.pairs.size()) + " vs " + std::to_string(b.pairs.size()));
    paired_scores p;
    p.subtask_id = a.subtask_id;
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        const bool ga = a.pairs[i].gold.has_value();
        const bool gb = b.pairs[i].gold.has_value();
        if (ga != gb)
            throw error("gold availability mismatch on " + a.subtask_id + " pair " +
                        std::to_string(i + 1));
        if (!ga) continue;
        if (*a.pairs[i].gold != *b.pairs[i].gold)
            throw error("gold value mismatch on " + a.subtask_id + " pair " +
                        std::to_string(i + 1));
        p.gold.push_back(*a.pairs[i].gold);
        p.sys_a.push_back(a.scores[i]);
        p.sys_b.push_back(b.scores[i]);
    }
    if (p.gold.size() < 3)
        throw error("need at least 3 gold pairs on " + a.subtask_id + ", have " +
                    std::to_string(p.gold.size()));
    return p;
}

double delta_statistic(const paired_scores& p, std::span<const std::size_t> idx) {
    const std::size_t m = idx.size();
    if (m < 2) throw degenerate_sample("resample too small for a correlation");
    std::vector<double> g(m), a(m), b(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = idx[i];
        g[i] = p.gold[j];
        a[i] = p.sys_a[j];
        b[i] = p.sys_b[j];
    }
    return 100.0 * (stats::pearson(a, g) - stats::pearson(b, g));
}

double delta_statistic(const paired_scores& p) {
    std::vector<std::size_t> idx(p.gold.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return delta_statistic(p, idx);
}

namespace {

// Linear interpolation between closest ranks on sorted values.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (q <= 0.0) return sorted.front();
    if (q >= 1.0) return sorted.back();
    const double h = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

confidence_interval bca_interval(const paired_scores& p, const bca_options& opt) {
    const std::size_t m = p.gold.size();
    if (m != p.sys_a.size() || m != p.sys_b.size())
        throw error("paired score vectors differ in length");
    if (m < 3) throw error("need at least 3 pairs for the bootstrap, have " + std::to_string(m));
    if (opt.replicates < 1000)
        throw error("need at least 1000 bootstrap replicates, have " +
                    std::to_string(opt.replicates));
    if (!(opt.level > 0.0 && opt.level < 1.0))
        throw error("confidence level must lie strictly between 0 and 1");

    confidence_interval ci;
    ci.level = opt.level;
    ci.replicates = opt.replicates;
    ci.seed = opt.seed;
    if (m < 10)
        ci.warnings.push_back(p.subtask_id + ": only " + std::to_string(m) +
                              " pairs; interval may be unstable");

    ci.delta_hat = delta_statistic(p);  // degenerate full sample propagates

    const std::size_t nb = opt.replicates;
    std::vector<double> theta(nb);
    parallel_for(nb, resolve_threads(opt.threads), [&](std::size_t b) {
        std::mt19937_64 gen(rng::stream_seed(opt.seed, static_cast<std::uint64_t>(b)));
        std::vector<std::size_t> idx(m);
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100)
                throw error("replicate " + std::to_string(b) +
                            ": 100 consecutive degenerate resamples");
            for (std::size_t i = 0; i < m; ++i) idx[i] = rng::uniform_index(gen, m);
            try {
                theta[b] = delta_statistic(p, idx);
                break;
            } catch (const degenerate_sample&) {
            }
        }
    });

    // Bias correction: strictly-less count, clamped away from 0 and B so the
    // normal quantile stays finite.
    std::size_t below = 0;
    for (double t : theta)
        if (t < ci.delta_hat) ++below;
    double c = static_cast<double>(below);
    if (below == 0) {
        c = 0.5;
        ci.warnings.push_back(p.subtask_id + ": all replicates at or above the estimate");
    } else if (below == nb) {
        c = static_cast<double>(nb) - 0.5;
        ci.warnings.push_back(p.subtask_id + ": all replicates below the estimate");
    }
    ci.z0 = stats::normal_quantile(c / static_cast<double>(nb));

    // Jackknife acceleration.
    double accel = 0.0;
    {
        std::vector<double> loo(m);
        std::vector<std::size_t> idx(m - 1);
        bool ok = true;
        for (std::size_t drop = 0; drop < m && ok; ++drop) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (i != drop) idx[k++] = i;
            try {
                loo[drop] = delta_statistic(p, idx);
            } catch (const degenerate_sample&) {
                ok = false;
            }
        }
        if (ok) {
            const double loo_mean = stats::mean(loo);
            double d2 = 0.0, d3 = 0.0;
            for (double v : loo) {
                const double d = loo_mean - v;
                d2 += d * d;
                d3 += d * d * d;
            }
            if (d2 > 0.0) accel = d3 / (6.0 * std::pow(d2, 1.5));
        } else {
            ci.warnings.push_back(p.subtask_id +
                                  ": degenerate jackknife sample; acceleration set to 0");
        }
    }
    ci.accel = accel;

    std::sort(theta.begin(), theta.end());
    if (theta.front() == theta.back()) {
        ci.warnings.push_back(p.subtask_id +
                              ": all bootstrap replicates identical; interval collapsed");
        ci.lower = ci.upper = ci.delta_hat;
        return ci;
    }

    const double alpha = (1.0 - opt.level) / 2.0;
    auto adjusted = [&](double q) {
        const double z = stats::normal_quantile(q);
        const double zs = ci.z0 + z;
        const double den = 1.0 - accel * zs;
        if (den <= 0.0) {
            ci.warnings.push_back(p.subtask_id +
                                  ": acceleration pushed an endpoint out of range; clamped");
            return zs > 0.0 ? 1.0 : 0.0;
        }
        return stats::normal_cdf(ci.z0 + zs / den);
    };
    const double beta_lo = adjusted(alpha);
    const double beta_hi = adjusted(1.0 - alpha);
    double lo = quantile_sorted(theta, beta_lo);
    double hi = quantile_sorted(theta, beta_hi);
    if (lo > hi) {
        std::swap(lo, hi);
        ci.warnings.push_back(p.subtask_id + ": adjusted endpoints crossed; reordered");
    }
    ci.lower = lo;
    ci.upper = hi;
    return ci;
}

verdict interval_verdict(const confidence_interval& ci) {
    if (ci.lower <= 0.0 && 0.0 <= ci.upper) return verdict::tie;
    return ci.delta_hat > 0.0 ? verdict::a_wins : verdict::b_wins;
}

const char* verdict_name(verdict v) {
    switch (v) {
        case verdict::tie: return "tie";
        case verdict::a_wins: return "a_wins";
        case verdict::b_wins: return "b_wins";
    }
    return "tie";
}

}  // namespace corrsim
