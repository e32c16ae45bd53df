#include "corrsim/pooling.hpp"

#include <algorithm>

#include "corrsim/error.hpp"
#include "corrsim/kernels.hpp"
#include "corrsim/stats.hpp"

namespace corrsim {

pool_kind parse_pool_kind(const std::string& name) {
    if (name == "mean") return pool_kind::mean;
    if (name == "max") return pool_kind::max;
    if (name == "min") return pool_kind::min;
    throw error("unknown pooling kind '" + name + "' (expected mean, max or min)");
}

const char* pool_kind_name(pool_kind k) {
    switch (k) {
        case pool_kind::mean: return "mean";
        case pool_kind::max: return "max";
        default: return "min";
    }
}

coeff_kind parse_coeff_kind(const std::string& name) {
    if (name == "cos") return coeff_kind::cos;
    if (name == "pearson") return coeff_kind::pearson;
    if (name == "wpearson") return coeff_kind::wpearson;
    if (name == "spearman") return coeff_kind::spearman;
    if (name == "kendall") return coeff_kind::kendall;
    throw error("unknown coefficient '" + name + "'");
}

std::vector<double> pool(const matrix& sentence, pool_kind kind) {
    const std::size_t k = sentence.rows(), d = sentence.cols();
    if (k == 0) throw empty_sentence("pool: sentence has no rows");
    std::vector<double> out(sentence.row(0), sentence.row(0) + d);
    if (kind == pool_kind::mean) {
        for (std::size_t i = 1; i < k; ++i) kernels::acc_add(out.data(), sentence.row(i), d);
        const double inv = 1.0 / static_cast<double>(k);
        std::vector<double> lo(sentence.row(0), sentence.row(0) + d);
        std::vector<double> hi(lo);
        for (std::size_t i = 1; i < k; ++i) {
            kernels::acc_min(lo.data(), sentence.row(i), d);
            kernels::acc_max(hi.data(), sentence.row(i), d);
        }
        for (std::size_t j = 0; j < d; ++j) out[j] = std::clamp(out[j] * inv, lo[j], hi[j]);
    } else if (kind == pool_kind::max) {
        for (std::size_t i = 1; i < k; ++i) kernels::acc_max(out.data(), sentence.row(i), d);
    } else {
        for (std::size_t i = 1; i < k; ++i) kernels::acc_min(out.data(), sentence.row(i), d);
    }
    return out;
}

double pooled_similarity(const matrix& s1, const matrix& s2, pool_kind kind, coeff_kind coeff,
                         double winsor_p) {
    if (s1.cols() != s2.cols())
        throw degenerate_sample("pooled_similarity: embedding dimension mismatch");
    const std::vector<double> x = pool(s1, kind);
    const std::vector<double> y = pool(s2, kind);
    switch (coeff) {
        case coeff_kind::cos: return stats::cosine(x, y);
        case coeff_kind::pearson: return stats::pearson(x, y);
        case coeff_kind::wpearson: return stats::winsorized_pearson(x, y, winsor_p);
        case coeff_kind::spearman: return stats::spearman(x, y);
        default: return stats::kendall(x, y);
    }
}

std::vector<double> pooled_mean_distribution(std::span<const matrix> sentences, pool_kind kind) {
    std::vector<double> out;
    out.reserve(sentences.size());
    for (const matrix& s : sentences) out.push_back(stats::mean(pool(s, kind)));
    return out;
}

}  // namespace corrsim
