#pragma once

#include <string>
#include <vector>

#include "corrsim/significance.hpp"
#include "corrsim/sts.hpp"

// Report persistence. Writers emit JSON with a fixed key order and 17
// significant digits per double, so identical runs produce identical bytes.
// The reader accepts anything structurally valid and round-trips exactly.

namespace corrsim {

void write_eval_report(const eval_report& r, const std::string& path);
eval_report read_eval_report(const std::string& path);

struct subtask_comparison {
    std::string subtask_id;
    std::size_t pairs = 0;  // gold pairs entering the bootstrap
    confidence_interval ci;
    verdict v = verdict::tie;
};

struct comparison_report {
    std::string measure_a, measure_b;
    std::string embeddings_a, embeddings_b;
    double level = 0.95;
    std::uint64_t replicates = 10000;
    std::uint64_t seed = 42;
    std::vector<subtask_comparison> rows;
    std::vector<std::string> warnings;  // skipped subtasks etc.
};

void write_comparison_report(const comparison_report& r, const std::string& path);

// Tab-separated discrepancy listing (header + one row per entry).
void write_discrepancies(const std::vector<discrepancy>& rows, const std::string& subtask_id,
                         const std::string& path);

}  // namespace corrsim
