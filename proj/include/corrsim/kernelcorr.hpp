#pragma once

#include <optional>
#include <string>

#include "corrsim/matrix.hpp"

// Pooling-free similarity. A k x D sentence matrix is transposed into D
// observation rows of length k; a D x D Gram matrix of kernel evaluations
// between those rows feeds HSIC / CKA / KA.

namespace corrsim {

enum class kernel_kind { linear, gaussian, distance };

kernel_kind parse_kernel_kind(const std::string& name);  // "linear" | "gaussian" | "distance"
const char* kernel_kind_name(kernel_kind k);

struct gram_matrix {
    matrix entries;      // D x D, symmetric by construction
    kernel_kind kind;
    double bandwidth;    // sigma^2 for gaussian, 0 otherwise
};

// Transpose: D rows of length k, row i holding dimension i of every word.
matrix observations(const matrix& sentence);

// Shared Gaussian bandwidth: median of the within-sentence pairwise squared
// Euclidean distances, pooled over both observation sets so K and L use one
// sigma^2. Cross-sentence pairs are excluded: their distances depend on how
// words line up, and the score must not change when a sentence is reordered.
// The median is the lower-middle order statistic for even counts. A zero
// median (identical observations) raises degenerate_bandwidth.
double median_heuristic(const matrix& obs1, const matrix& obs2);

// K_ij = <X_i, X_j> (linear), exp(-||X_i - X_j||^2 / (2 sigma^2)) (gaussian),
// -||X_i - X_j|| (distance). Gaussian requires bandwidth > 0.
gram_matrix gram(const matrix& obs, kernel_kind kind, std::optional<double> bandwidth = {});

// Empirical HSIC, (D-1)^-2 Tr(KHLH) with H = I - (1/D) 11^T, computed by
// double-centering both matrices (O(D^2), H never materialized).
double hsic(const matrix& k, const matrix& l);

// HSIC(K,L) / sqrt(HSIC(K,K) HSIC(L,L)). Constant observations (zero
// self-HSIC) raise degenerate_sample. With the distance kernel this equals
// squared distance correlation.
double cka(const matrix& s1, const matrix& s2, kernel_kind kind);

// <K,L>_F / (||K||_F ||L||_F), uncentered. Zero-norm Gram raises
// degenerate_sample.
double ka(const matrix& s1, const matrix& s2, kernel_kind kind);

}  // namespace corrsim
