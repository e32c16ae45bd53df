#include <algorithm>
#include <cmath>
#include <vector>

#include "corrsim/error.hpp"
#include "corrsim/stats.hpp"

// Normal CDF/quantile and the Shapiro-Wilk W test. The quantile is Wichura's
// PPND16 rational approximation; the W test is a fresh implementation of
// Royston's 1995 approximation (valid for 3 <= n <= 5000) from the published
// coefficient tables.

namespace corrsim::stats {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw error("normal_quantile: p must be in (0, 1)");
    static const double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[8] = {
        1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
        5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static const double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {
        1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {
        1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    const auto ratio = [](const double* num, const double* den, double r) {
        double top = num[7], bot = den[7];
        for (int i = 6; i >= 0; --i) {
            top = top * r + num[i];
            bot = bot * r + den[i];
        }
        return top / bot;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * ratio(a, b, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0)
        val = ratio(c, d, r - 1.6);
    else
        val = ratio(e, f, r - 5.0);
    return q < 0.0 ? -val : val;
}

namespace {

template <std::size_t N>
double poly(const double (&cf)[N], double x) {
    double s = cf[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) s = s * x + cf[i];
    return s;
}

double upper_tail(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

}  // namespace

shapiro_result shapiro_wilk(std::span<const double> v) {
    static const double g[2] = {-2.273, 0.459};
    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static const double c3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static const double c6[3] = {-0.4803, -0.082676, 0.0030302};

    const std::size_t n = v.size();
    if (n < 3) throw degenerate_sample("shapiro_wilk needs at least 3 observations");
    if (n > 5000)
        throw degenerate_sample("shapiro_wilk: approximation is not rated beyond n = 5000");

    std::vector<double> x(v.begin(), v.end());
    std::sort(x.begin(), x.end());
    const double range = x[n - 1] - x[0];
    if (!(range > 0.0)) throw degenerate_sample("shapiro_wilk: constant input");

    const std::size_t nn2 = n / 2;
    const double an = static_cast<double>(n);

    // Expected normal order statistics (lower half) and the approximate
    // optimal weights.
    std::vector<double> m(nn2), w(nn2);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < nn2; ++i) {
        m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += 2.0 * m[i] * m[i];
    }
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;

    std::size_t adj = 1;
    double fac = 1.0;
    if (n > 5) {
        adj = 2;
        const double a2 = poly(c2, rsn) - m[1] / ssumm2;
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                        (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        w[0] = a1;
        w[1] = a2;
    } else {
        w[0] = a1;
        if (n > 3)
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
        else
            w[0] = std::sqrt(0.5);
    }
    for (std::size_t i = adj; i < nn2; ++i) w[i] = -m[i] / fac;

    // W as one minus a stably-computed 1 - r^2 between the sorted sample and
    // the antisymmetric weight vector (negative weights on the lower half).
    std::vector<double> full(n, 0.0);
    for (std::size_t i = 0; i < nn2; ++i) {
        full[i] = -w[i];
        full[n - 1 - i] = w[i];
    }
    double sx = 0.0, sw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i] / range;
        sw += full[i];
    }
    const double mx = sx / an, mw = sw / an;
    double ssx = 0.0, ssw = 0.0, sxw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] / range - mx;
        const double dw = full[i] - mw;
        ssx += dx * dx;
        ssw += dw * dw;
        sxw += dw * dx;
    }
    const double ssws = std::sqrt(ssw * ssx);
    const double w1 = (ssws - sxw) * (ssws + sxw) / (ssw * ssx);
    const double W = 1.0 - w1;

    shapiro_result res{W, 1.0};
    if (n == 3) {
        const double pi6 = 6.0 / M_PI;
        const double stqr = std::asin(std::sqrt(0.75));
        double p = pi6 * (std::asin(std::sqrt(std::clamp(W, 0.0, 1.0))) - stqr);
        res.p = std::clamp(p, 0.0, 1.0);
        return res;
    }
    const double y = std::log1p(-std::clamp(W, 0.0, 1.0));
    double mu, sigma;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) {
            res.p = 1e-19;
            return res;
        }
        const double yy = -std::log(gamma - y);
        mu = poly(c3, an);
        sigma = std::exp(poly(c4, an));
        res.p = std::clamp(upper_tail((yy - mu) / sigma), 0.0, 1.0);
    } else {
        const double la = std::log(an);
        mu = poly(c5, la);
        sigma = std::exp(poly(c6, la));
        res.p = std::clamp(upper_tail((y - mu) / sigma), 0.0, 1.0);
    }
    return res;
}

}  // namespace corrsim::stats
