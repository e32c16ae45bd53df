#include <string>
#include <vector>

#include "corrsim/error.hpp"
#include "corrsim/report_io.hpp"
#include "corrsim/significance.hpp"
#include "corrsim/sts.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace corrsim;
namespace ts = testsup;

namespace {

eval_report sample_report() {
    eval_report r;
    r.measure_id = "max-spearman";
    r.embeddings_id = "mini.vec";
    r.config_hash = config_hash(r.measure_id, r.embeddings_id, 0.05, false);

    subtask_report st;
    st.subtask_id = "STS12/MSRpar";
    st.pairs = {{"a \"quoted\" cat", "tab\there", 3.5},
                {"caf\xc3\xa9 r\xc3\xa9sum\xc3\xa9", "line\nbreak", std::nullopt},
                {"back\\slash", "plain words", 0.0}};
    st.scores = {0.25, -0.7511111111111111, 1.0};
    st.fallback = {0, 1, 0};
    st.fallback_count = 1;
    st.pearson_x100 = 43.210987654321098;
    st.warnings = {"STS12/MSRpar: something mild"};
    r.subtasks.push_back(st);

    subtask_report empty;
    empty.subtask_id = "STS12/MSRvid";
    empty.warnings = {"STS12/MSRvid: only 0 scored pairs, Pearson omitted"};
    r.subtasks.push_back(empty);

    r.year_means = {{"STS12", 43.210987654321098}};
    r.warnings = {"STS12/OnWN: missing files, skipped"};
    return r;
}

bool reports_equal(const eval_report& a, const eval_report& b) {
    if (a.measure_id != b.measure_id || a.embeddings_id != b.embeddings_id ||
        a.config_hash != b.config_hash || a.warnings != b.warnings ||
        a.year_means.size() != b.year_means.size() || a.subtasks.size() != b.subtasks.size())
        return false;
    for (std::size_t i = 0; i < a.year_means.size(); ++i)
        if (a.year_means[i].first != b.year_means[i].first ||
            a.year_means[i].second != b.year_means[i].second)
            return false;
    for (std::size_t i = 0; i < a.subtasks.size(); ++i) {
        const auto& x = a.subtasks[i];
        const auto& y = b.subtasks[i];
        if (x.subtask_id != y.subtask_id || x.scores != y.scores || x.fallback != y.fallback ||
            x.fallback_count != y.fallback_count || x.warnings != y.warnings ||
            x.pearson_x100.has_value() != y.pearson_x100.has_value() ||
            x.pairs.size() != y.pairs.size())
            return false;
        if (x.pearson_x100 && *x.pearson_x100 != *y.pearson_x100) return false;
        for (std::size_t j = 0; j < x.pairs.size(); ++j) {
            if (x.pairs[j].s1 != y.pairs[j].s1 || x.pairs[j].s2 != y.pairs[j].s2 ||
                x.pairs[j].gold.has_value() != y.pairs[j].gold.has_value())
                return false;
            if (x.pairs[j].gold && *x.pairs[j].gold != *y.pairs[j].gold) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("eval reports round-trip exactly and rewrite byte-stably") {
    const auto dir = ts::tmp_dir();
    const auto r = sample_report();
    const auto path = dir + "/eval.json";
    write_eval_report(r, path);

    const auto back = read_eval_report(path);
    CHECK(reports_equal(r, back));

    write_eval_report(back, dir + "/eval2.json");
    CHECK(ts::read_file(dir + "/eval2.json") == ts::read_file(path));

    // absent pearson stays absent, special characters survive
    CHECK(!back.subtasks[1].pearson_x100.has_value());
    CHECK(back.subtasks[0].pairs[0].s1 == "a \"quoted\" cat");
    CHECK(back.subtasks[0].pairs[1].s1 == "caf\xc3\xa9 r\xc3\xa9sum\xc3\xa9");
    CHECK(back.subtasks[0].pairs[1].s2 == "line\nbreak");
    CHECK(back.subtasks[0].pairs[2].s1 == "back\\slash");
    CHECK(!back.subtasks[0].pairs[1].gold.has_value());

    // the file is plain JSON any parser can read
    const auto j = nlohmann::json::parse(ts::read_file(path));
    CHECK(j["format"] == "corrsim-eval-v1");
    CHECK(j["subtasks"][0]["pairs"][2]["score"] == 1.0);
    CHECK(j["subtasks"][0]["pairs"][1]["fallback"] == true);
}

TEST_CASE("eval report reading rejects bad inputs with parse errors") {
    const auto dir = ts::tmp_dir();
    CHECK_THROWS_AS(read_eval_report(dir + "/absent.json"), error);

    ts::write_file(dir + "/broken.json", "{ not json");
    CHECK_THROWS_AS(read_eval_report(dir + "/broken.json"), parse_error);

    ts::write_file(dir + "/wrong.json", "{\"format\": \"something-else\"}");
    CHECK_THROWS_AS(read_eval_report(dir + "/wrong.json"), parse_error);

    ts::write_file(dir + "/missing.json", "{\"format\": \"corrsim-eval-v1\"}");
    CHECK_THROWS_AS(read_eval_report(dir + "/missing.json"), parse_error);
}

TEST_CASE("comparison reports serialize every interval field") {
    const auto dir = ts::tmp_dir();
    comparison_report r;
    r.measure_a = "max-spearman";
    r.measure_b = "cka-linear";
    r.embeddings_a = "mini.vec";
    r.embeddings_b = "mini.vec";
    r.level = 0.95;
    r.replicates = 10000;
    r.seed = 42;

    subtask_comparison row;
    row.subtask_id = "STS12/MSRpar";
    row.pairs = 9;
    row.ci.lower = -3.25;
    row.ci.upper = 12.5;
    row.ci.level = 0.95;
    row.ci.delta_hat = 4.115;
    row.ci.replicates = 10000;
    row.ci.seed = 42;
    row.ci.z0 = 0.0125;
    row.ci.accel = -0.004;
    row.ci.warnings = {"STS12/MSRpar: only 9 pairs; interval may be unstable"};
    row.v = verdict::tie;
    r.rows.push_back(row);
    r.warnings = {"STS12/MSRvid: no overlap, skipped"};

    const auto path = dir + "/compare.json";
    write_comparison_report(r, path);
    const auto j = nlohmann::json::parse(ts::read_file(path));
    CHECK(j["format"] == "corrsim-compare-v1");
    CHECK(j["measure_a"] == "max-spearman");
    CHECK(j["measure_b"] == "cka-linear");
    CHECK(j["level"] == 0.95);
    CHECK(j["replicates"] == 10000);
    CHECK(j["seed"] == 42);
    REQUIRE(j["subtasks"].size() == 1);
    const auto& js = j["subtasks"][0];
    CHECK(js["subtask_id"] == "STS12/MSRpar");
    CHECK(js["pairs"] == 9);
    CHECK(js["delta_hat"] == 4.115);
    CHECK(js["lower"] == -3.25);
    CHECK(js["upper"] == 12.5);
    CHECK(js["z0"] == 0.0125);
    CHECK(js["accel"] == -0.004);
    CHECK(js["verdict"] == "tie");
    CHECK(js["warnings"].size() == 1);
    CHECK(j["warnings"][0] == "STS12/MSRvid: no overlap, skipped");

    write_comparison_report(r, dir + "/compare2.json");
    CHECK(ts::read_file(dir + "/compare2.json") == ts::read_file(path));
}

TEST_CASE("discrepancy listings are exact tab-separated bytes") {
    const auto dir = ts::tmp_dir();
    std::vector<discrepancy> rows;
    rows.push_back({2, "the cat sat", "a cat sat", 5.0, 0.0, 5.0});
    rows.push_back({0, "one two", "three four", 1.25, 3.125, 1.875});

    const auto path = dir + "/disc.tsv";
    write_discrepancies(rows, "STS12/MSRpar", path);
    const auto want =
        "subtask\tpair\tgold\trescaled\tdelta\ts1\ts2\n"
        "STS12/MSRpar\t3\t5.000\t0.000\t5.000\tthe cat sat\ta cat sat\n"
        "STS12/MSRpar\t1\t1.250\t3.125\t1.875\tone two\tthree four\n";
    CHECK(ts::read_file(path) == want);

    write_discrepancies({}, "STS12/MSRpar", dir + "/empty.tsv");
    CHECK(ts::read_file(dir + "/empty.tsv") == "subtask\tpair\tgold\trescaled\tdelta\ts1\ts2\n");
}
