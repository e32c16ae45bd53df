#include "corrsim/kernelcorr.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "corrsim/error.hpp"
#include "corrsim/kernels.hpp"

namespace corrsim {

kernel_kind parse_kernel_kind(const std::string& name) {
    if (name == "linear") return kernel_kind::linear;
    if (name == "gaussian") return kernel_kind::gaussian;
    if (name == "distance") return kernel_kind::distance;
    throw error("unknown kernel kind '" + name + "'");
}

const char* kernel_kind_name(kernel_kind k) {
    switch (k) {
        case kernel_kind::linear: return "linear";
        case kernel_kind::gaussian: return "gaussian";
        default: return "distance";
    }
}

matrix observations(const matrix& sentence) { return sentence.transposed(); }

double median_heuristic(const matrix& obs1, const matrix& obs2) {
    std::vector<double> d2;
    d2.reserve(obs1.rows() * (obs1.rows() - 1) / 2 + obs2.rows() * (obs2.rows() - 1) / 2);
    // within-sentence pairs only: cross-sentence distances depend on word alignment
    const auto add_pairs = [&d2](const matrix& o) {
        for (std::size_t i = 0; i < o.rows(); ++i)
            for (std::size_t j = i + 1; j < o.rows(); ++j)
                d2.push_back(kernels::sqdist(o.row(i), o.row(j), o.cols()));
    };
    add_pairs(obs1);
    add_pairs(obs2);
    if (d2.empty()) throw degenerate_bandwidth("median_heuristic: no observation pairs");

    const std::size_t mid = (d2.size() - 1) / 2;  // lower-middle order statistic
    std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(mid), d2.end());
    const double med = d2[mid];
    if (!(med > 0.0))
        throw degenerate_bandwidth("median_heuristic: median pairwise distance is zero");
    return med;
}

gram_matrix gram(const matrix& obs, kernel_kind kind, std::optional<double> bandwidth) {
    const std::size_t d = obs.rows(), k = obs.cols();
    double bw = 0.0;
    if (kind == kernel_kind::gaussian) {
        if (!bandwidth) throw error("gram: gaussian kernel needs a bandwidth");
        bw = *bandwidth;
        if (!(bw > 0.0)) throw error("gram: bandwidth must be positive");
    }
    const double inv2bw = kind == kernel_kind::gaussian ? 1.0 / (2.0 * bw) : 0.0;

    gram_matrix g{matrix(d, d), kind, bw};
    for (std::size_t i = 0; i < d; ++i) {
        switch (kind) {
            case kernel_kind::linear: g.entries.at(i, i) = kernels::dot(obs.row(i), obs.row(i), k); break;
            case kernel_kind::gaussian: g.entries.at(i, i) = 1.0; break;
            case kernel_kind::distance: g.entries.at(i, i) = 0.0; break;
        }
        for (std::size_t j = i + 1; j < d; ++j) {
            double v;
            if (kind == kernel_kind::linear) {
                v = kernels::dot(obs.row(i), obs.row(j), k);
            } else {
                const double sq = kernels::sqdist(obs.row(i), obs.row(j), k);
                if (kind == kernel_kind::gaussian)
                    v = std::exp(-sq * inv2bw);
                else
                    v = sq == 0.0 ? 0.0 : -std::sqrt(sq);
            }
            g.entries.at(i, j) = v;
            g.entries.at(j, i) = v;
        }
    }
    return g;
}

namespace {

// HMH: subtract row means and column means, add back the grand mean.
matrix center(const matrix& m) {
    const std::size_t d = m.rows();
    std::vector<double> rmean(d), cmean(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        rmean[i] = kernels::sum(m.row(i), d) / static_cast<double>(d);
        kernels::acc_add(cmean.data(), m.row(i), d);
    }
    for (std::size_t j = 0; j < d; ++j) cmean[j] /= static_cast<double>(d);
    const double grand =
        kernels::sum(m.data(), m.size()) / static_cast<double>(d) / static_cast<double>(d);
    matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const double shift = grand - rmean[i];
        const double* src = m.row(i);
        double* dst = out.row(i);
        for (std::size_t j = 0; j < d; ++j) dst[j] = src[j] - cmean[j] + shift;
    }
    return out;
}

struct cka_terms {
    double cross, self1, self2;
};

cka_terms centered_products(const matrix& s1, const matrix& s2, kernel_kind kind) {
    if (s1.cols() != s2.cols())
        throw degenerate_sample("kernel correlation: embedding dimension mismatch");
    const std::size_t d = s1.cols();
    if (d < 2) throw degenerate_sample("kernel correlation needs embedding dimension >= 2");
    const matrix o1 = observations(s1), o2 = observations(s2);
    std::optional<double> bw;
    if (kind == kernel_kind::gaussian) bw = median_heuristic(o1, o2);
    const gram_matrix k = gram(o1, kind, bw);
    const gram_matrix l = gram(o2, kind, bw);
    const matrix ck = center(k.entries), cl = center(l.entries);
    return {kernels::dot(ck.data(), cl.data(), ck.size()),
            kernels::dot(ck.data(), ck.data(), ck.size()),
            kernels::dot(cl.data(), cl.data(), cl.size())};
}

}  // namespace

double hsic(const matrix& k, const matrix& l) {
    if (k.rows() != k.cols() || l.rows() != l.cols() || k.rows() != l.rows())
        throw error("hsic: Gram matrix dimensions must match");
    const std::size_t d = k.rows();
    if (d < 2) throw error("hsic: needs dimension >= 2");
    const matrix ck = center(k), cl = center(l);
    const double scale = static_cast<double>(d - 1);
    return kernels::dot(ck.data(), cl.data(), ck.size()) / (scale * scale);
}

double cka(const matrix& s1, const matrix& s2, kernel_kind kind) {
    const cka_terms t = centered_products(s1, s2, kind);
    if (t.self1 <= 0.0 || t.self2 <= 0.0)
        throw degenerate_sample("cka: constant observations give zero self-HSIC");
    return t.cross / (std::sqrt(t.self1) * std::sqrt(t.self2));
}

double ka(const matrix& s1, const matrix& s2, kernel_kind kind) {
    if (s1.cols() != s2.cols())
        throw degenerate_sample("kernel correlation: embedding dimension mismatch");
    const matrix o1 = observations(s1), o2 = observations(s2);
    std::optional<double> bw;
    if (kind == kernel_kind::gaussian) bw = median_heuristic(o1, o2);
    const gram_matrix k = gram(o1, kind, bw);
    const gram_matrix l = gram(o2, kind, bw);
    const double nk = kernels::dot(k.entries.data(), k.entries.data(), k.entries.size());
    const double nl = kernels::dot(l.entries.data(), l.entries.data(), l.entries.size());
    if (nk <= 0.0 || nl <= 0.0) throw degenerate_sample("ka: zero-norm Gram matrix");
    const double cross = kernels::dot(k.entries.data(), l.entries.data(), k.entries.size());
    return cross / (std::sqrt(nk) * std::sqrt(nl));
}

}  // namespace corrsim
