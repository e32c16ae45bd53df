#pragma once

#include <functional>
#include <string>
#include <vector>

#include "corrsim/matrix.hpp"

// Measure registry. Ids follow the grammar:
//   <pool>-<coeff>   pool in {mean,max,min}, coeff in {cos,pearson,wpearson,spearman,kendall}
//   cka-<kernel>     kernel in {linear,gaussian,dcor}  (dcor = distance kernel)
//   ka-linear
// Every measure maps two sentence matrices (k x D, l x D) to one real score.

namespace corrsim {

struct measure_options {
    double winsor_p = 0.05;  // wpearson only
};

using measure_fn = std::function<double(const matrix&, const matrix&)>;

// Throws corrsim::error listing the registry when id is unknown.
measure_fn make_measure(const std::string& id, const measure_options& opt = {});

const std::vector<std::string>& measure_ids();

std::string measure_registry_line();  // comma-separated ids, for error messages

}  // namespace corrsim
