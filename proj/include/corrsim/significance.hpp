#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corrsim/sts.hpp"

// Bias-corrected accelerated (BCa) bootstrap for the difference in
// Pearson-vs-gold between two systems scored on the identical dataset.

namespace corrsim {

struct paired_scores {
    std::string subtask_id;
    std::vector<double> gold;   // length M >= 3
    std::vector<double> sys_a;
    std::vector<double> sys_b;
};

// Aligns two subtask reports over the same dataset. Pair counts and gold
// values must match exactly; pairs without gold are excluded. Fewer than 3
// matched pairs raises corrsim::error.
paired_scores make_paired(const subtask_report& a, const subtask_report& b);

// 100 * (pearson(sys_a[idx], gold[idx]) - pearson(sys_b[idx], gold[idx])).
// Degenerate subsets propagate degenerate_sample.
double delta_statistic(const paired_scores& p, std::span<const std::size_t> idx);
double delta_statistic(const paired_scores& p);  // full sample

struct bca_options {
    double level = 0.95;
    std::uint64_t replicates = 10000;  // >= 1000
    std::uint64_t seed = 42;
    int threads = 1;  // 0 = hardware concurrency
};

struct confidence_interval {
    double lower = 0.0, upper = 0.0;
    double level = 0.95;
    double delta_hat = 0.0;
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
    double z0 = 0.0, accel = 0.0;  // diagnostics
    std::vector<std::string> warnings;
};

// Paired index resampling with replacement. Replicate b draws its indices
// from mt19937_64 seeded with stream_seed(seed, b), so results are identical
// for any thread count. Bias correction z0 uses the strictly-less convention
// (#{theta* < delta_hat} / B) with a half-count clamp when every replicate
// falls on one side; acceleration comes from the jackknife skewness formula;
// endpoints are linear-interpolation quantiles of the replicate distribution
// at the BCa-adjusted levels. Degenerate resamples are redrawn (at most 100
// tries per replicate). Identical replicates collapse the interval to
// [delta_hat, delta_hat] with a warning.
confidence_interval bca_interval(const paired_scores& p, const bca_options& opt = {});

enum class verdict { tie, a_wins, b_wins };

// 0 inside [lower, upper] means tie; otherwise the sign of delta_hat picks
// the winner.
verdict interval_verdict(const confidence_interval& ci);
const char* verdict_name(verdict v);

}  // namespace corrsim
