#include "corrsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "corrsim/error.hpp"
#include "corrsim/stats.hpp"

namespace corrsim {

namespace {

void scan_one(normality_report& rep, const std::string& token, const double* v,
              std::size_t d, double alpha) {
    std::vector<double> sample(v, v + d);
    try {
        const auto res = stats::shapiro_wilk(sample);
        normality_row row;
        row.token = token;
        row.w = res.w;
        row.p = res.p;
        row.failed = res.p < alpha;
        rep.rows.push_back(std::move(row));
        ++rep.tested;
        if (rep.rows.back().failed) ++rep.failed;
    } catch (const degenerate_sample&) {
        ++rep.degenerate;
    }
}

}  // namespace

normality_report normality_scan(const embedding_store& store,
                                const std::vector<std::string>& tokens, double alpha) {
    normality_report rep;
    rep.alpha = alpha;
    const std::size_t d = store.dim();
    if (tokens.empty()) {
        for (std::size_t i = 0; i < store.size(); ++i)
            scan_one(rep, store.tokens()[i], store.vector_at(i), d, alpha);
    } else {
        for (const auto& tok : tokens) {
            const double* v = store.find(tok);
            if (!v) throw error("token not in store: " + tok);
            scan_one(rep, tok, v, d, alpha);
        }
    }
    if (rep.tested > 0)
        rep.failure_fraction =
            static_cast<double>(rep.failed) / static_cast<double>(rep.tested);
    return rep;
}

histogram make_histogram(const std::vector<double>& values, std::size_t bins) {
    if (values.empty()) throw error("cannot build a histogram of an empty sample");
    if (bins == 0) throw error("histogram needs at least one bin");
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double lo = *mn_it, hi = *mx_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
        bins = 1;
    }
    histogram h;
    h.total = values.size();
    h.bin_width = (hi - lo) / static_cast<double>(bins);
    h.bin_left.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        h.bin_left[i] = lo + static_cast<double>(i) * h.bin_width;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / h.bin_width);
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    h.density.resize(bins);
    const double norm = static_cast<double>(h.total) * h.bin_width;
    for (std::size_t i = 0; i < bins; ++i)
        h.density[i] = static_cast<double>(counts[i]) / norm;
    return h;
}

histogram pooled_corpus_histogram(const std::vector<matrix>& sentences, pool_kind p,
                                  std::size_t bins) {
    if (sentences.empty()) throw error("empty corpus");
    return make_histogram(pooled_mean_distribution(sentences, p), bins);
}

histogram pooled_sentence_histogram(const matrix& sentence, pool_kind p,
                                    std::size_t bins) {
    return make_histogram(pool(sentence, p), bins);
}

namespace {

struct file_handle {
    std::FILE* f;
    explicit file_handle(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
        if (!f) throw error("cannot write " + path);
    }
    ~file_handle() {
        if (f) std::fclose(f);
    }
};

void write_csv_field(std::FILE* f, const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        std::fwrite(s.data(), 1, s.size(), f);
        return;
    }
    std::fputc('"', f);
    for (char c : s) {
        if (c == '"') std::fputc('"', f);
        std::fputc(c, f);
    }
    std::fputc('"', f);
}

}  // namespace

void write_histogram_csv(const histogram& h, const std::string& path) {
    file_handle out(path);
    std::fputs("bin_left,bin_width,density\n", out.f);
    for (std::size_t i = 0; i < h.bin_left.size(); ++i)
        std::fprintf(out.f, "%.17g,%.17g,%.17g\n", h.bin_left[i], h.bin_width,
                     h.density[i]);
}

void write_normality_csv(const normality_report& r, const std::string& path) {
    file_handle out(path);
    std::fputs("token,w,p,failed\n", out.f);
    for (const auto& row : r.rows) {
        write_csv_field(out.f, row.token);
        std::fprintf(out.f, ",%.17g,%.17g,%d\n", row.w, row.p, row.failed ? 1 : 0);
    }
}

}  // namespace corrsim
