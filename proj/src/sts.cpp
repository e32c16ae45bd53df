#include "corrsim/sts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "corrsim/error.hpp"
#include "corrsim/measures.hpp"
#include "corrsim/parallel.hpp"
#include "corrsim/stats.hpp"

namespace corrsim {
namespace {

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path + ": cannot open");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        lines.push_back(line);
    }
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

}  // namespace

sts_dataset load_sts(const std::string& input_path, const std::string& gs_path,
                     const std::string& subtask_id) {
    const std::vector<std::string> input = read_lines(input_path);
    const std::vector<std::string> gs = read_lines(gs_path);
    // Tolerate one trailing blank line difference from text editors.
    auto effective = [](const std::vector<std::string>& v) {
        return v.size() && v.back().empty() ? v.size() - 1 : v.size();
    };
    std::size_t n_in = input.size(), n_gs = gs.size();
    if (n_in != n_gs) {
        n_in = effective(input);
        n_gs = effective(gs);
        if (n_in != n_gs)
            throw parse_error(input_path + ": " + std::to_string(n_in) + " pairs but " + gs_path +
                              " has " + std::to_string(n_gs) + " lines");
    }

    sts_dataset d;
    d.subtask_id = subtask_id;
    d.pairs.reserve(n_in);
    for (std::size_t i = 0; i < n_in; ++i) {
        const std::string& line = input[i];
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw parse_error(input_path + ":" + std::to_string(i + 1) +
                              ": expected at least 2 tab-separated fields");
        const std::size_t tab2 = line.find('\t', tab + 1);  // extra fields ignored
        sts_pair p;
        p.s1 = line.substr(0, tab);
        p.s2 = tab2 == std::string::npos ? line.substr(tab + 1)
                                         : line.substr(tab + 1, tab2 - tab - 1);
        const std::string g = trim(gs[i]);
        if (!g.empty()) {
            double v;
            const char* b = g.data();
            const char* e = g.data() + g.size();
            auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e)
                throw parse_error(gs_path + ":" + std::to_string(i + 1) + ": bad gold score '" +
                                  g + "'");
            if (!(v >= 0.0 && v <= 5.0))
                throw parse_error(gs_path + ":" + std::to_string(i + 1) + ": gold score " + g +
                                  " outside [0, 5]");
            p.gold = v;
        }
        d.pairs.push_back(std::move(p));
    }
    return d;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& sts_layout() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> layout = {
        {"STS12", {"MSRpar", "MSRvid", "SMTeuroparl", "surprise.OnWN", "surprise.SMTnews"}},
        {"STS13", {"FNWN", "headlines", "OnWN"}},
        {"STS14", {"deft-forum", "deft-news", "headlines", "images", "OnWN", "tweet-news"}},
        {"STS15", {"answers-forums", "answers-students", "belief", "headlines", "images"}},
        {"STS16", {"answer-answer", "headlines", "plagiarism", "postediting", "question-question"}},
    };
    return layout;
}

std::vector<std::string> expand_tasks(const std::string& tasks_csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= tasks_csv.size()) {
        const std::size_t comma = tasks_csv.find(',', pos);
        const std::string item =
            trim(tasks_csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        pos = comma == std::string::npos ? tasks_csv.size() + 1 : comma + 1;
        if (item.empty()) continue;
        if (item == "all") {
            for (const auto& [year, subs] : sts_layout())
                for (const auto& s : subs) out.push_back(year + "/" + s);
            continue;
        }
        const std::size_t slash = item.find('/');
        const std::string year = item.substr(0, slash);
        const auto it = std::find_if(sts_layout().begin(), sts_layout().end(),
                                     [&](const auto& y) { return y.first == year; });
        if (it == sts_layout().end()) throw error("unknown benchmark year '" + year + "'");
        if (slash == std::string::npos) {
            for (const auto& s : it->second) out.push_back(year + "/" + s);
        } else {
            const std::string sub = item.substr(slash + 1);
            if (std::find(it->second.begin(), it->second.end(), sub) == it->second.end())
                throw error("unknown subtask '" + item + "'");
            out.push_back(item);
        }
    }
    if (out.empty()) throw error("empty task list");
    return out;
}

sts_paths subtask_paths(const std::string& sts_dir, const std::string& subtask_id) {
    const std::size_t slash = subtask_id.find('/');
    if (slash == std::string::npos) throw error("bad subtask id '" + subtask_id + "'");
    const std::string year = subtask_id.substr(0, slash);   // "STS12"
    const std::string sub = subtask_id.substr(slash + 1);
    const std::string base = sts_dir + "/" + year + "-en-test/";
    return {base + "STS.input." + sub + ".txt", base + "STS.gs." + sub + ".txt"};
}

subtask_report score_dataset(const sts_dataset& d, const embedding_store& store,
                             const std::string& measure_id, const scoring_options& opt) {
    const measure_fn measure = make_measure(measure_id, {opt.winsor_p});

    subtask_report r;
    r.subtask_id = d.subtask_id;
    r.pairs = d.pairs;
    r.scores.assign(d.pairs.size(), 0.0);
    r.fallback.assign(d.pairs.size(), 0);

    parallel_for(d.pairs.size(), opt.threads, [&](std::size_t i) {
        const sts_pair& p = d.pairs[i];
        try {
            const auto t1 = tokenize(p.s1);
            const auto t2 = tokenize(p.s2);
            const auto m1 = sentence_matrix(store, t1);
            const auto m2 = sentence_matrix(store, t2);
            if (opt.oov_fail && (!m1.oov.empty() || !m2.oov.empty())) {
                std::string tok = m1.oov.empty() ? m2.oov.front() : m1.oov.front();
                throw error(d.subtask_id + " pair " + std::to_string(i + 1) +
                            ": out-of-vocabulary token '" + tok + "'");
            }
            r.scores[i] = measure(m1.m, m2.m);
        } catch (const empty_sentence&) {
            if (opt.oov_fail)
                throw error(d.subtask_id + " pair " + std::to_string(i + 1) +
                            ": sentence empty after vocabulary lookup");
            r.fallback[i] = 1;
        } catch (const degenerate_sample&) {
            r.fallback[i] = 1;
        } catch (const degenerate_bandwidth&) {
            r.fallback[i] = 1;
        }
    });

    for (std::size_t i = 0; i < r.fallback.size(); ++i)
        if (r.fallback[i]) ++r.fallback_count;

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < r.pairs.size(); ++i)
        if (r.pairs[i].gold) {
            xs.push_back(r.scores[i]);
            ys.push_back(*r.pairs[i].gold);
        }
    if (xs.size() < 3) {
        r.warnings.push_back(d.subtask_id + ": only " + std::to_string(xs.size()) +
                             " scored pairs, Pearson omitted");
    } else {
        try {
            r.pearson_x100 = 100.0 * stats::pearson(xs, ys);
        } catch (const degenerate_sample&) {
            r.warnings.push_back(d.subtask_id + ": zero variance in scores or gold, Pearson omitted");
        }
    }
    return r;
}

std::vector<std::pair<std::string, double>> aggregate_years(
    const std::vector<subtask_report>& subtasks, std::vector<std::string>* warnings) {
    std::vector<std::string> order;
    std::vector<std::vector<double>> values;
    const auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };
    for (const auto& r : subtasks) {
        if (r.subtask_id == "STS13/SMT") {
            warn("STS13/SMT is excluded from aggregation");
            continue;
        }
        if (!r.pearson_x100) {
            warn(r.subtask_id + ": no Pearson, excluded from the year mean");
            continue;
        }
        const std::string year = r.subtask_id.substr(0, r.subtask_id.find('/'));
        auto it = std::find(order.begin(), order.end(), year);
        if (it == order.end()) {
            order.push_back(year);
            values.emplace_back();
            it = std::prev(order.end());
        }
        values[static_cast<std::size_t>(it - order.begin())].push_back(*r.pearson_x100);
    }
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        double s = 0.0;
        for (double v : values[i]) s += v;
        out.emplace_back(order[i], s / static_cast<double>(values[i].size()));
    }
    return out;
}

std::string config_hash(const std::string& measure_id, const std::string& embeddings_id,
                        double winsor_p, bool oov_fail) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", winsor_p);
    const std::string canon = "measure=" + measure_id + ";embeddings=" + embeddings_id +
                              ";winsor=" + buf + ";oov=" + (oov_fail ? "fail" : "drop");
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

std::vector<discrepancy> top_discrepancies(const subtask_report& r, std::size_t n) {
    std::vector<std::size_t> scored;
    for (std::size_t i = 0; i < r.pairs.size(); ++i)
        if (r.pairs[i].gold) scored.push_back(i);
    if (scored.size() < 2)
        throw error(r.subtask_id + ": needs at least 2 pairs with gold for the discrepancy table");
    double lo = r.scores[scored[0]], hi = lo;
    for (std::size_t i : scored) {
        lo = std::min(lo, r.scores[i]);
        hi = std::max(hi, r.scores[i]);
    }
    if (!(hi > lo)) throw error(r.subtask_id + ": all system scores equal, rescale undefined");
    const double span = hi - lo;

    std::vector<discrepancy> all;
    all.reserve(scored.size());
    for (std::size_t i : scored) {
        discrepancy d;
        d.index = i;
        d.s1 = r.pairs[i].s1;
        d.s2 = r.pairs[i].s2;
        d.gold = *r.pairs[i].gold;
        d.rescaled = (r.scores[i] - lo) / span * 5.0;
        d.delta = std::fabs(d.gold - d.rescaled);
        all.push_back(std::move(d));
    }
    std::sort(all.begin(), all.end(), [](const discrepancy& a, const discrepancy& b) {
        if (a.delta != b.delta) return a.delta > b.delta;
        return a.index < b.index;
    });
    if (all.size() > n) all.resize(n);
    return all;
}

}  // namespace corrsim
