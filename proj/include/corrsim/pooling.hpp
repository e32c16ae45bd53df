#pragma once

#include <span>
#include <string>
#include <vector>

#include "corrsim/matrix.hpp"

// Column-wise reduction of a sentence matrix (k words x D dims) to one
// D-vector, and the pooled-similarity composition pool -> coefficient.

namespace corrsim {

enum class pool_kind { mean, max, min };

pool_kind parse_pool_kind(const std::string& name);  // "mean" | "max" | "min"
const char* pool_kind_name(pool_kind k);

enum class coeff_kind { cos, pearson, wpearson, spearman, kendall };

coeff_kind parse_coeff_kind(const std::string& name);

// Elementwise column mean/max/min over the k rows. Mean entries are clamped
// into [column min, column max] so the order-statistics invariant holds
// exactly under rounding.
std::vector<double> pool(const matrix& sentence, pool_kind kind);

// coeff(pool(s1), pool(s2)). winsor_p applies only to coeff_kind::wpearson.
double pooled_similarity(const matrix& s1, const matrix& s2, pool_kind kind, coeff_kind coeff,
                         double winsor_p = 0.05);

// One value per sentence: the mean across the D entries of its pooled vector.
std::vector<double> pooled_mean_distribution(std::span<const matrix> sentences, pool_kind kind);

}  // namespace corrsim
