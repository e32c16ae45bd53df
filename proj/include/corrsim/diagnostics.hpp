#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "corrsim/embeddings.hpp"
#include "corrsim/pooling.hpp"

// Distributional diagnostics: per-word normality scans and density histograms
// of pooled sentence representations.

namespace corrsim {

struct normality_row {
    std::string token;
    double w = 0.0;  // Shapiro-Wilk statistic
    double p = 0.0;
    bool failed = false;  // p < alpha
};

struct normality_report {
    std::size_t tested = 0;
    std::size_t failed = 0;
    std::size_t degenerate = 0;  // zero-range vectors, excluded from tested
    double failure_fraction = 0.0;
    double alpha = 0.05;
    std::vector<normality_row> rows;  // store order, degenerate rows excluded
};

// Shapiro-Wilk over each word vector's D entries. tokens empty = whole store.
normality_report normality_scan(const embedding_store& store,
                                const std::vector<std::string>& tokens = {},
                                double alpha = 0.05);

struct histogram {
    std::vector<double> bin_left;  // size bins
    double bin_width = 0.0;
    std::vector<double> density;  // count / (total * width); integrates to 1
    std::size_t total = 0;
};

// Equal-width bins spanning [min, max]; a constant sample gets the unit-width
// bin [v - 0.5, v + 0.5]. Values equal to max land in the last bin.
histogram make_histogram(const std::vector<double>& values, std::size_t bins = 60);

// Histogram of pooled_mean_distribution over a corpus of sentence matrices
// (one scalar per sentence: the mean of its pooled vector's entries).
histogram pooled_corpus_histogram(const std::vector<matrix>& sentences, pool_kind pool,
                                  std::size_t bins = 60);

// Histogram of the D entries of one sentence's pooled vector.
histogram pooled_sentence_histogram(const matrix& sentence, pool_kind pool,
                                    std::size_t bins = 60);

// CSV writers. Histograms use the header "bin_left,bin_width,density" with 17
// significant digits. The normality table quotes tokens containing commas,
// quotes, or newlines.
void write_histogram_csv(const histogram& h, const std::string& path);
void write_normality_csv(const normality_report& r, const std::string& path);

}  // namespace corrsim
