#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corrsim/matrix.hpp"

namespace corrsim {

enum class embedding_format { auto_detect, word2vec_text, glove_text };

struct load_stats {
    std::size_t kept = 0;
    std::size_t skipped_filtered = 0;   // rows dropped by the vocab filter
    std::size_t duplicates = 0;         // repeated tokens (first kept)
    std::size_t declared_count = 0;     // word2vec header N, 0 for glove
    bool header_mismatch = false;       // word2vec N != rows actually present
};

// Immutable token -> R^D map. Insertion order is file order; lookups are
// exact byte matches.
class embedding_store {
public:
    std::size_t dim() const { return vectors_.cols(); }
    std::size_t size() const { return vectors_.rows(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const double* vector_at(std::size_t i) const { return vectors_.row(i); }

    // nullptr when the token is out of vocabulary.
    const double* find(std::string_view token) const {
        auto it = index_.find(token);
        return it == index_.end() ? nullptr : vectors_.row(it->second);
    }

private:
    struct sv_hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };
    struct sv_eq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const { return a == b; }
    };

    friend embedding_store load_embeddings(const std::string&, embedding_format,
                                           const std::unordered_set<std::string>*, load_stats*);
    matrix vectors_;
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t, sv_hash, sv_eq> index_;
};

// Reads word2vec-text (leading "N D" header line) or glove-text (no header).
// auto_detect treats a first line of exactly two integer fields as the
// word2vec header. Values must be finite; malformed lines raise parse_error
// with path and line number. When vocab_filter is given, only those tokens
// are materialized (this is what keeps the 2M-row downloads at desk-scale
// memory). An empty result raises parse_error.
embedding_store load_embeddings(
    const std::string& path, embedding_format fmt = embedding_format::auto_detect,
    const std::unordered_set<std::string>* vocab_filter = nullptr, load_stats* stats = nullptr);

// Writes glove-text with 6 significant digits per value. Round-trips through
// load_embeddings to the printed precision.
void save_embeddings(const embedding_store& store, const std::string& path);

// Lowercases ASCII letters, splits on Unicode whitespace, strips leading and
// trailing ASCII punctuation from each token, drops tokens that end up empty.
// Non-ASCII bytes pass through untouched.
std::vector<std::string> tokenize(std::string_view text);

struct sentence_matrix_result {
    matrix m;                         // k x D, one row per in-vocabulary token
    std::vector<std::string> used;    // tokens behind each row, in order
    std::vector<std::string> oov;     // dropped tokens, in order
};

// Stacks the vectors of the in-vocabulary tokens in sentence order; repeated
// tokens repeat rows. Raises empty_sentence when nothing is left.
sentence_matrix_result sentence_matrix(const embedding_store& store,
                                       std::span<const std::string> tokens);

}  // namespace corrsim
