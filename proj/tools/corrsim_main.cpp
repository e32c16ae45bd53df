#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"

#include "corrsim/diagnostics.hpp"
#include "corrsim/embeddings.hpp"
#include "corrsim/error.hpp"
#include "corrsim/measures.hpp"
#include "corrsim/report_io.hpp"
#include "corrsim/significance.hpp"
#include "corrsim/sts.hpp"

namespace {

namespace fs = std::filesystem;
using namespace corrsim;

embedding_format parse_format(const std::string& s) {
    if (s == "auto") return embedding_format::auto_detect;
    if (s == "word2vec") return embedding_format::word2vec_text;
    return embedding_format::glove_text;
}

int default_threads() {
    const char* env = std::getenv("CORRSIM_THREADS");
    if (!env) return 0;
    return std::atoi(env);  // junk or 0 means auto
}

std::string basename_of(const std::string& path) {
    return fs::path(path).filename().string();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        if (comma > start) out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

// Validates a measure id up front; unknown ids are usage errors (exit 2).
bool check_measure(const std::string& id) {
    try {
        make_measure(id);
        return true;
    } catch (const error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return false;
    }
}

struct dataset_bundle {
    std::vector<sts_dataset> datasets;
    std::vector<std::string> warnings;  // missing-file notes
};

dataset_bundle load_datasets(const std::string& sts_dir, const std::string& tasks) {
    dataset_bundle b;
    for (const auto& id : expand_tasks(tasks)) {
        const auto paths = subtask_paths(sts_dir, id);
        if (!fs::exists(paths.input) || !fs::exists(paths.gs)) {
            b.warnings.push_back("missing files for " + id + ", skipped");
            continue;
        }
        b.datasets.push_back(load_sts(paths.input, paths.gs, id));
    }
    if (b.datasets.empty()) throw error("no subtask files found under " + sts_dir);
    return b;
}

std::unordered_set<std::string> vocab_of(const std::vector<sts_dataset>& datasets) {
    std::unordered_set<std::string> vocab;
    for (const auto& d : datasets)
        for (const auto& p : d.pairs) {
            for (auto& t : tokenize(p.s1)) vocab.insert(std::move(t));
            for (auto& t : tokenize(p.s2)) vocab.insert(std::move(t));
        }
    return vocab;
}

struct sim_args {
    std::string embeddings, format = "auto", measure, s1, s2, oov = "drop";
    double winsor = 0.05;
};

int cmd_sim(const sim_args& a) {
    if (!check_measure(a.measure)) return 2;
    std::unordered_set<std::string> vocab;
    const auto toks1 = tokenize(a.s1);
    const auto toks2 = tokenize(a.s2);
    vocab.insert(toks1.begin(), toks1.end());
    vocab.insert(toks2.begin(), toks2.end());
    const auto store = load_embeddings(a.embeddings, parse_format(a.format), &vocab);
    const auto sm1 = sentence_matrix(store, toks1);
    const auto sm2 = sentence_matrix(store, toks2);
    if (a.oov == "fail" && (!sm1.oov.empty() || !sm2.oov.empty())) {
        std::string msg = "out-of-vocabulary tokens:";
        for (const auto& t : sm1.oov) msg += " " + t;
        for (const auto& t : sm2.oov) msg += " " + t;
        throw error(msg);
    }
    measure_options mopt;
    mopt.winsor_p = a.winsor;
    const auto fn = make_measure(a.measure, mopt);
    std::printf("%.6f\n", fn(sm1.m, sm2.m));
    return 0;
}

struct eval_args {
    std::string embeddings, format = "auto", sts_dir, tasks = "all", measure, out,
                oov = "drop";
    double winsor = 0.05;
    int threads = default_threads();
};

int cmd_eval(const eval_args& a) {
    if (!check_measure(a.measure)) return 2;
    auto bundle = load_datasets(a.sts_dir, a.tasks);
    for (const auto& w : bundle.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    const auto vocab = vocab_of(bundle.datasets);
    load_stats lstats;
    const auto store =
        load_embeddings(a.embeddings, parse_format(a.format), &vocab, &lstats);

    scoring_options sopt;
    sopt.winsor_p = a.winsor;
    sopt.oov_fail = a.oov == "fail";
    sopt.threads = a.threads;

    eval_report report;
    report.measure_id = a.measure;
    report.embeddings_id = basename_of(a.embeddings);
    report.config_hash = config_hash(a.measure, report.embeddings_id, a.winsor, sopt.oov_fail);
    report.warnings = bundle.warnings;
    for (const auto& d : bundle.datasets)
        report.subtasks.push_back(score_dataset(d, store, a.measure, sopt));
    report.year_means = aggregate_years(report.subtasks, &report.warnings);

    for (const auto& st : report.subtasks) {
        if (st.pearson_x100)
            std::printf("%-24s %7.2f   (fallback %zu/%zu)\n", st.subtask_id.c_str(),
                        *st.pearson_x100, st.fallback_count, st.pairs.size());
        else
            std::printf("%-24s %7s   (fallback %zu/%zu)\n", st.subtask_id.c_str(), "n/a",
                        st.fallback_count, st.pairs.size());
        for (const auto& w : st.warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    for (const auto& [year, mean] : report.year_means)
        std::printf("%-24s %7.2f\n", (year + " mean").c_str(), mean);
    write_eval_report(report, a.out);
    std::printf("report written to %s\n", a.out.c_str());
    return 0;
}

struct compare_args {
    std::string a, b, out;
    double level = 0.95;
    std::uint64_t bootstrap = 10000, seed = 42;
    int threads = default_threads();
};

int cmd_compare(const compare_args& args) {
    const auto ra = read_eval_report(args.a);
    const auto rb = read_eval_report(args.b);

    comparison_report rep;
    rep.measure_a = ra.measure_id;
    rep.measure_b = rb.measure_id;
    rep.embeddings_a = ra.embeddings_id;
    rep.embeddings_b = rb.embeddings_id;
    rep.level = args.level;
    rep.replicates = args.bootstrap;
    rep.seed = args.seed;

    bca_options opt;
    opt.level = args.level;
    opt.replicates = args.bootstrap;
    opt.seed = args.seed;
    opt.threads = args.threads;

    for (const auto& sa : ra.subtasks) {
        const subtask_report* sb = nullptr;
        for (const auto& cand : rb.subtasks)
            if (cand.subtask_id == sa.subtask_id) {
                sb = &cand;
                break;
            }
        if (!sb) {
            rep.warnings.push_back(sa.subtask_id + ": only in " + args.a + ", skipped");
            continue;
        }
        std::size_t gold_pairs = 0;
        for (const auto& p : sa.pairs)
            if (p.gold) ++gold_pairs;
        if (gold_pairs < 3) {
            rep.warnings.push_back(sa.subtask_id + ": fewer than 3 gold pairs, skipped");
            continue;
        }
        const auto paired = make_paired(sa, *sb);
        subtask_comparison row;
        row.subtask_id = sa.subtask_id;
        row.pairs = paired.gold.size();
        row.ci = bca_interval(paired, opt);
        row.v = interval_verdict(row.ci);
        rep.rows.push_back(std::move(row));
    }
    for (const auto& sb : rb.subtasks) {
        bool in_a = false;
        for (const auto& sa : ra.subtasks)
            if (sa.subtask_id == sb.subtask_id) in_a = true;
        if (!in_a) rep.warnings.push_back(sb.subtask_id + ": only in " + args.b + ", skipped");
    }
    if (rep.rows.empty()) throw error("no comparable subtasks between the two reports");

    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("%-24s %10s   %10s %10s   %s\n", "subtask", "delta", "lower", "upper",
                "verdict");
    for (const auto& row : rep.rows) {
        std::printf("%-24s %10.2f   %10.2f %10.2f   %s\n", row.subtask_id.c_str(),
                    row.ci.delta_hat, row.ci.lower, row.ci.upper, verdict_name(row.v));
        for (const auto& w : row.ci.warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    write_comparison_report(rep, args.out);
    std::printf("report written to %s\n", args.out.c_str());
    return 0;
}

struct diagnose_args {
    std::string embeddings, format = "auto", sts_dir, tasks = "all",
                pooling = "mean,max,min", out_dir, sentence;
    std::size_t bins = 60;
};

int cmd_diagnose(const diagnose_args& a) {
    std::vector<pool_kind> kinds;
    try {
        for (const auto& name : split_csv(a.pooling)) kinds.push_back(parse_pool_kind(name));
    } catch (const error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
    if (kinds.empty()) {
        std::fprintf(stderr, "--pooling needs at least one of mean,max,min\n");
        return 2;
    }

    auto bundle = load_datasets(a.sts_dir, a.tasks);
    for (const auto& w : bundle.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    auto vocab = vocab_of(bundle.datasets);
    if (!a.sentence.empty()) {
        for (auto& t : tokenize(a.sentence)) vocab.insert(std::move(t));
    }
    const auto store = load_embeddings(a.embeddings, parse_format(a.format), &vocab);

    std::vector<matrix> corpus;
    std::size_t unusable = 0;
    for (const auto& d : bundle.datasets)
        for (const auto& p : d.pairs)
            for (const auto* text : {&p.s1, &p.s2}) {
                try {
                    corpus.push_back(sentence_matrix(store, tokenize(*text)).m);
                } catch (const empty_sentence&) {
                    ++unusable;
                }
            }
    if (corpus.empty()) throw error("no sentence has an in-vocabulary token");
    if (unusable > 0)
        std::fprintf(stderr, "warning: %zu sentences had no in-vocabulary tokens\n",
                     unusable);

    fs::create_directories(a.out_dir);
    const fs::path out_dir(a.out_dir);
    for (const auto kind : kinds) {
        const auto h = pooled_corpus_histogram(corpus, kind, a.bins);
        const auto path = (out_dir / ("hist_" + std::string(pool_kind_name(kind)) + ".csv"))
                              .string();
        write_histogram_csv(h, path);
        std::printf("wrote %s\n", path.c_str());
    }
    if (!a.sentence.empty()) {
        const auto sm = sentence_matrix(store, tokenize(a.sentence));
        for (const auto kind : kinds) {
            const auto h = pooled_sentence_histogram(sm.m, kind, a.bins);
            const auto path =
                (out_dir / ("hist_sentence_" + std::string(pool_kind_name(kind)) + ".csv"))
                    .string();
            write_histogram_csv(h, path);
            std::printf("wrote %s\n", path.c_str());
        }
    }

    const auto scan = normality_scan(store);
    const auto norm_path = (out_dir / "normality.csv").string();
    write_normality_csv(scan, norm_path);
    std::printf("wrote %s\n", norm_path.c_str());
    std::printf("normality: tested=%zu failed=%zu degenerate=%zu failure_fraction=%.4f "
                "alpha=%.2f\n",
                scan.tested, scan.failed, scan.degenerate, scan.failure_fraction, scan.alpha);
    return 0;
}

struct errors_args {
    std::string report, subtask, out;
    std::size_t top = 5;
};

int cmd_errors(const errors_args& a) {
    const auto rep = read_eval_report(a.report);
    const subtask_report* chosen = nullptr;
    if (a.subtask.empty()) {
        if (rep.subtasks.size() != 1) {
            std::string ids;
            for (const auto& st : rep.subtasks) ids += " " + st.subtask_id;
            throw error("report has " + std::to_string(rep.subtasks.size()) +
                        " subtasks, pick one with --subtask:" + ids);
        }
        chosen = &rep.subtasks.front();
    } else {
        for (const auto& st : rep.subtasks)
            if (st.subtask_id == a.subtask) chosen = &st;
        if (!chosen) throw error("subtask not in report: " + a.subtask);
    }
    const auto rows = top_discrepancies(*chosen, a.top);
    write_discrepancies(rows, chosen->subtask_id, a.out);
    std::printf("wrote %zu rows to %s\n", rows.size(), a.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic similarity from correlations of word embedding dimensions"};
    app.require_subcommand(1);

    const auto format_check = CLI::IsMember({"auto", "word2vec", "glove"});
    const auto oov_check = CLI::IsMember({"drop", "fail"});

    sim_args sa;
    auto* sim = app.add_subcommand("sim", "score one sentence pair");
    sim->add_option("--embeddings", sa.embeddings, "embedding file")->required();
    sim->add_option("--format", sa.format)->check(format_check);
    sim->add_option("--measure", sa.measure, "measure id")->required();
    sim->add_option("--winsor", sa.winsor, "winsorized-pearson clip fraction");
    sim->add_option("--oov", sa.oov)->check(oov_check);
    sim->add_option("s1", sa.s1, "first sentence")->required();
    sim->add_option("s2", sa.s2, "second sentence")->required();

    eval_args ea;
    auto* eval = app.add_subcommand("eval", "score benchmark subtasks");
    eval->add_option("--embeddings", ea.embeddings)->required();
    eval->add_option("--format", ea.format)->check(format_check);
    eval->add_option("--sts-dir", ea.sts_dir, "benchmark root directory")->required();
    eval->add_option("--tasks", ea.tasks, "'all', years, or year/subtask, comma separated");
    eval->add_option("--measure", ea.measure)->required();
    eval->add_option("--out", ea.out, "report file")->required();
    eval->add_option("--winsor", ea.winsor);
    eval->add_option("--oov", ea.oov)->check(oov_check);
    eval->add_option("--threads", ea.threads, "0 = all cores");

    compare_args ca;
    auto* compare = app.add_subcommand("compare", "bootstrap two reports against each other");
    compare->add_option("--a", ca.a, "first report")->required();
    compare->add_option("--b", ca.b, "second report")->required();
    compare->add_option("--bootstrap", ca.bootstrap, "replicates");
    compare->add_option("--seed", ca.seed);
    compare->add_option("--level", ca.level, "confidence level");
    compare->add_option("--out", ca.out, "comparison file")->required();
    compare->add_option("--threads", ca.threads, "0 = all cores");

    diagnose_args da;
    auto* diagnose = app.add_subcommand("diagnose", "embedding and pooling diagnostics");
    diagnose->add_option("--embeddings", da.embeddings)->required();
    diagnose->add_option("--format", da.format)->check(format_check);
    diagnose->add_option("--sts-dir", da.sts_dir)->required();
    diagnose->add_option("--tasks", da.tasks);
    diagnose->add_option("--pooling", da.pooling, "subset of mean,max,min");
    diagnose->add_option("--out-dir", da.out_dir)->required();
    diagnose->add_option("--bins", da.bins, "histogram bins");
    diagnose->add_option("--sentence", da.sentence, "also histogram this sentence's pooled vector");

    errors_args ra;
    auto* errors = app.add_subcommand("errors", "largest gold-vs-system discrepancies");
    errors->add_option("--report", ra.report, "eval report file")->required();
    errors->add_option("--subtask", ra.subtask, "subtask id (required for multi-subtask reports)");
    errors->add_option("--top", ra.top, "rows to keep");
    errors->add_option("--out", ra.out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_sim(sa);
        if (eval->parsed()) return cmd_eval(ea);
        if (compare->parsed()) return cmd_compare(ca);
        if (diagnose->parsed()) return cmd_diagnose(da);
        if (errors->parsed()) return cmd_errors(ra);
    } catch (const corrsim::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
