#pragma once

#include <span>
#include <vector>

// Univariate statistics over paired samples. A "paired sample" is two spans
// of equal length D >= 2 holding finite values; the two spans are the D
// per-dimension observations of the two variables being compared.
//
// All coefficients are symmetric in their arguments and lie in [-1, 1] up to
// floating-point rounding. Zero-variance (or zero-norm, for cosine) input
// raises degenerate_sample.

namespace corrsim::stats {

double mean(std::span<const double> v);

// Product-moment correlation.
double pearson(std::span<const double> x, std::span<const double> y);

// Angular similarity; the one coefficient that is not shift-invariant.
double cosine(std::span<const double> x, std::span<const double> y);

// Fractional ranks, 1-based, ties get the average of their positions.
std::vector<double> ranks(std::span<const double> v);

// Pearson over rank transforms.
double spearman(std::span<const double> x, std::span<const double> y);

// Tau-b with tie correction, O(D log D) via merge-sort inversion counting.
double kendall(std::span<const double> x, std::span<const double> y);

// Nearest-rank winsorization: h = ceil(p*D) smallest values are raised to the
// (h+1)-th smallest, h largest lowered to the (h+1)-th largest. p in [0, 0.5);
// 2h >= D raises degenerate_sample. p = 0 is the identity.
std::vector<double> winsorize(std::span<const double> v, double p);

// Pearson over winsorized inputs (each side winsorized independently).
double winsorized_pearson(std::span<const double> x, std::span<const double> y, double p = 0.05);

// Biased sample skewness m3 / m2^(3/2).
double skewness(std::span<const double> v);

// Lower-middle order statistic: sorted[(n-1)/2] for both parities.
double median(std::span<const double> v);

double normal_cdf(double z);

// Inverse standard normal CDF (Wichura's PPND16 rational approximations),
// p in (0, 1).
double normal_quantile(double p);

struct shapiro_result {
    double w;
    double p;
};

// Shapiro-Wilk normality test (Royston's 1995 AS R94 approximation),
// 3 <= n <= 5000. Constant input raises degenerate_sample.
shapiro_result shapiro_wilk(std::span<const double> v);

}  // namespace corrsim::stats
