#include "corrsim/measures.hpp"

#include "corrsim/error.hpp"
#include "corrsim/kernelcorr.hpp"
#include "corrsim/pooling.hpp"

namespace corrsim {

const std::vector<std::string>& measure_ids() {
    static const std::vector<std::string> ids = {
        "mean-cos",      "mean-pearson", "mean-wpearson", "mean-spearman", "mean-kendall",
        "max-cos",       "max-pearson",  "max-wpearson",  "max-spearman",  "max-kendall",
        "min-cos",       "min-pearson",  "min-wpearson",  "min-spearman",  "min-kendall",
        "cka-linear",    "cka-gaussian", "cka-dcor",      "ka-linear",
    };
    return ids;
}

std::string measure_registry_line() {
    std::string out;
    for (const auto& id : measure_ids()) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

measure_fn make_measure(const std::string& id, const measure_options& opt) {
    const auto dash = id.find('-');
    if (dash != std::string::npos) {
        const std::string head = id.substr(0, dash);
        const std::string tail = id.substr(dash + 1);
        if (head == "cka") {
            const kernel_kind kind =
                tail == "dcor" ? kernel_kind::distance
                               : (tail == "linear" || tail == "gaussian" ? parse_kernel_kind(tail)
                                                                         : kernel_kind::linear);
            if (tail == "linear" || tail == "gaussian" || tail == "dcor")
                return [kind](const matrix& a, const matrix& b) { return cka(a, b, kind); };
        } else if (head == "ka") {
            if (tail == "linear")
                return [](const matrix& a, const matrix& b) {
                    return ka(a, b, kernel_kind::linear);
                };
        } else if (head == "mean" || head == "max" || head == "min") {
            const pool_kind pk = parse_pool_kind(head);
            if (tail == "cos" || tail == "pearson" || tail == "wpearson" || tail == "spearman" ||
                tail == "kendall") {
                const coeff_kind ck = parse_coeff_kind(tail);
                const double p = opt.winsor_p;
                return [pk, ck, p](const matrix& a, const matrix& b) {
                    return pooled_similarity(a, b, pk, ck, p);
                };
            }
        }
    }
    throw error("unknown measure '" + id + "'; available: " + measure_registry_line());
}

}  // namespace corrsim
