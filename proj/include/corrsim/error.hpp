#pragma once

#include <stdexcept>
#include <string>

namespace corrsim {

// Base class for all data/usage errors raised by the library. The CLI maps
// these to exit code 3; argv problems are handled before any of these can
// fire and map to exit code 2.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (embeddings, benchmark data, reports). Message carries
// file path and 1-based line number where applicable.
class parse_error : public error {
public:
    using error::error;
};

// A statistic's preconditions do not hold: zero variance, too few
// observations, zero-norm input, and similar.
class degenerate_sample : public error {
public:
    using error::error;
};

// Sentence has no in-vocabulary tokens (or no tokens at all).
class empty_sentence : public error {
public:
    using error::error;
};

// Median-heuristic bandwidth is unusable (no comparable observation pairs, or
// median pairwise distance is zero).
class degenerate_bandwidth : public error {
public:
    using error::error;
};

}  // namespace corrsim
