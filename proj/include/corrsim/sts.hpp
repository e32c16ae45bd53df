#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrsim/embeddings.hpp"

// The 2012-2016 benchmark harness: SentEval-layout file loading, scoring a
// dataset with any registered measure, per-subtask Pearson x 100, per-year
// unweighted means, and the largest-discrepancy listing.

namespace corrsim {

struct sts_pair {
    std::string s1, s2;
    std::optional<double> gold;  // in [0, 5] when present
};

struct sts_dataset {
    std::string subtask_id;  // "STS14/images"
    std::vector<sts_pair> pairs;
};

// Input: >= 2 tab-separated fields per line (extra fields ignored). Gold: one
// decimal or blank per line, same line count as the input file.
sts_dataset load_sts(const std::string& input_path, const std::string& gs_path,
                     const std::string& subtask_id);

// Benchmark layout: year -> subtask names, as shipped in the standard
// STS{12..16}-en-test directories. STS13/SMT is not listed (no longer
// distributed) and is excluded from aggregation even if supplied.
const std::vector<std::pair<std::string, std::vector<std::string>>>& sts_layout();

// Expands a comma-separated task list ("STS12,STS14/images" or "all") into
// subtask ids. Unknown years or subtasks raise corrsim::error.
std::vector<std::string> expand_tasks(const std::string& tasks_csv);

struct sts_paths {
    std::string input, gs;
};

// DIR/STS{yy}-en-test/STS.input.{name}.txt and STS.gs.{name}.txt
sts_paths subtask_paths(const std::string& sts_dir, const std::string& subtask_id);

struct scoring_options {
    double winsor_p = 0.05;
    bool oov_fail = false;  // raise instead of dropping OOV tokens
    int threads = 1;        // 0 = hardware concurrency
};

struct subtask_report {
    std::string subtask_id;
    std::vector<sts_pair> pairs;
    std::vector<double> scores;         // one per pair; fallback pairs hold 0.0
    std::vector<std::uint8_t> fallback; // 1 where the fallback score was used
    std::size_t fallback_count = 0;
    std::optional<double> pearson_x100; // absent when undefined (see warnings)
    std::vector<std::string> warnings;
};

// Scores every pair. Pairs that are empty after OOV dropping or where the
// measure raises degenerate_sample/degenerate_bandwidth get the fallback
// score 0.0 and are counted. Pearson x 100 is computed over pairs with gold;
// fewer than 3 such pairs or zero variance leaves it absent with a warning.
subtask_report score_dataset(const sts_dataset& d, const embedding_store& store,
                             const std::string& measure_id, const scoring_options& opt = {});

// Unweighted mean of subtask Pearsons per year, in first-appearance order.
// Subtasks without a Pearson are skipped with a warning; STS13/SMT is always
// excluded.
std::vector<std::pair<std::string, double>> aggregate_years(
    const std::vector<subtask_report>& subtasks, std::vector<std::string>* warnings = nullptr);

struct eval_report {
    std::string measure_id;
    std::string embeddings_id;
    std::string config_hash;
    std::vector<subtask_report> subtasks;
    std::vector<std::pair<std::string, double>> year_means;
    std::vector<std::string> warnings;  // run level: missing files, skipped aggregates
};

// FNV-1a over the canonical configuration string, hex-encoded.
std::string config_hash(const std::string& measure_id, const std::string& embeddings_id,
                        double winsor_p, bool oov_fail);

struct discrepancy {
    std::size_t index;  // pair index within the subtask
    std::string s1, s2;
    double gold;
    double rescaled;  // system score min-max rescaled to [0, 5]
    double delta;     // |gold - rescaled|
};

// Pairs with gold, system scores min-max rescaled to [0, 5] (an increasing
// affine map, so subtask Pearson is unchanged), sorted by delta descending
// with ties broken by pair index. All-equal system scores raise
// corrsim::error.
std::vector<discrepancy> top_discrepancies(const subtask_report& r, std::size_t n = 5);

}  // namespace corrsim
