#include "corrsim/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "corrsim/error.hpp"

namespace corrsim {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void append_string_array(std::string& out, const std::vector<std::string>& v,
                         const char* indent) {
    if (v.empty()) {
        out += "[]";
        return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += indent;
        out += "  ";
        append_escaped(out, v[i]);
        out += i + 1 < v.size() ? ",\n" : "\n";
    }
    out += indent;
    out += ']';
}

void write_file(const std::string& path, const std::string& body) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw error("cannot write " + path);
    const std::size_t n = std::fwrite(body.data(), 1, body.size(), f);
    const bool ok = n == body.size() && std::fclose(f) == 0;
    if (!ok) throw error("short write to " + path);
}

}  // namespace

void write_eval_report(const eval_report& r, const std::string& path) {
    std::string out;
    out.reserve(1 << 16);
    out += "{\n  \"format\": \"corrsim-eval-v1\",\n  \"measure_id\": ";
    append_escaped(out, r.measure_id);
    out += ",\n  \"embeddings_id\": ";
    append_escaped(out, r.embeddings_id);
    out += ",\n  \"config_hash\": ";
    append_escaped(out, r.config_hash);
    out += ",\n  \"subtasks\": [";
    for (std::size_t si = 0; si < r.subtasks.size(); ++si) {
        const auto& st = r.subtasks[si];
        out += si ? ",\n    {\n" : "\n    {\n";
        out += "      \"subtask_id\": ";
        append_escaped(out, st.subtask_id);
        out += ",\n      \"fallback_count\": ";
        out += std::to_string(st.fallback_count);
        out += ",\n      \"pearson_x100\": ";
        if (st.pearson_x100)
            append_double(out, *st.pearson_x100);
        else
            out += "null";
        out += ",\n      \"warnings\": ";
        append_string_array(out, st.warnings, "      ");
        out += ",\n      \"pairs\": [";
        for (std::size_t i = 0; i < st.pairs.size(); ++i) {
            out += i ? ",\n        {\"s1\": " : "\n        {\"s1\": ";
            append_escaped(out, st.pairs[i].s1);
            out += ", \"s2\": ";
            append_escaped(out, st.pairs[i].s2);
            out += ", \"gold\": ";
            if (st.pairs[i].gold)
                append_double(out, *st.pairs[i].gold);
            else
                out += "null";
            out += ", \"score\": ";
            append_double(out, st.scores[i]);
            out += ", \"fallback\": ";
            out += st.fallback[i] ? "true" : "false";
            out += '}';
        }
        out += st.pairs.empty() ? "]\n    }" : "\n      ]\n    }";
    }
    out += r.subtasks.empty() ? "],\n" : "\n  ],\n";
    out += "  \"year_means\": [";
    for (std::size_t i = 0; i < r.year_means.size(); ++i) {
        out += i ? ",\n    {\"year\": " : "\n    {\"year\": ";
        append_escaped(out, r.year_means[i].first);
        out += ", \"mean\": ";
        append_double(out, r.year_means[i].second);
        out += '}';
    }
    out += r.year_means.empty() ? "],\n" : "\n  ],\n";
    out += "  \"warnings\": ";
    append_string_array(out, r.warnings, "  ");
    out += "\n}\n";
    write_file(path, out);
}

eval_report read_eval_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "corrsim-eval-v1")
            throw parse_error(path + ": not a corrsim eval report");
        eval_report r;
        r.measure_id = j.at("measure_id").get<std::string>();
        r.embeddings_id = j.at("embeddings_id").get<std::string>();
        r.config_hash = j.at("config_hash").get<std::string>();
        for (const auto& js : j.at("subtasks")) {
            subtask_report st;
            st.subtask_id = js.at("subtask_id").get<std::string>();
            st.fallback_count = js.at("fallback_count").get<std::size_t>();
            if (!js.at("pearson_x100").is_null())
                st.pearson_x100 = js.at("pearson_x100").get<double>();
            for (const auto& w : js.at("warnings"))
                st.warnings.push_back(w.get<std::string>());
            for (const auto& jp : js.at("pairs")) {
                sts_pair p;
                p.s1 = jp.at("s1").get<std::string>();
                p.s2 = jp.at("s2").get<std::string>();
                if (!jp.at("gold").is_null()) p.gold = jp.at("gold").get<double>();
                st.pairs.push_back(std::move(p));
                st.scores.push_back(jp.at("score").get<double>());
                st.fallback.push_back(jp.at("fallback").get<bool>() ? 1 : 0);
            }
            r.subtasks.push_back(std::move(st));
        }
        for (const auto& jy : j.at("year_means"))
            r.year_means.emplace_back(jy.at("year").get<std::string>(),
                                      jy.at("mean").get<double>());
        for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void write_comparison_report(const comparison_report& r, const std::string& path) {
    std::string out;
    out.reserve(1 << 12);
    out += "{\n  \"format\": \"corrsim-compare-v1\",\n  \"measure_a\": ";
    append_escaped(out, r.measure_a);
    out += ",\n  \"measure_b\": ";
    append_escaped(out, r.measure_b);
    out += ",\n  \"embeddings_a\": ";
    append_escaped(out, r.embeddings_a);
    out += ",\n  \"embeddings_b\": ";
    append_escaped(out, r.embeddings_b);
    out += ",\n  \"level\": ";
    append_double(out, r.level);
    out += ",\n  \"replicates\": ";
    out += std::to_string(r.replicates);
    out += ",\n  \"seed\": ";
    out += std::to_string(r.seed);
    out += ",\n  \"subtasks\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += i ? ",\n    {\n" : "\n    {\n";
        out += "      \"subtask_id\": ";
        append_escaped(out, row.subtask_id);
        out += ",\n      \"pairs\": ";
        out += std::to_string(row.pairs);
        out += ",\n      \"delta_hat\": ";
        append_double(out, row.ci.delta_hat);
        out += ",\n      \"lower\": ";
        append_double(out, row.ci.lower);
        out += ",\n      \"upper\": ";
        append_double(out, row.ci.upper);
        out += ",\n      \"z0\": ";
        append_double(out, row.ci.z0);
        out += ",\n      \"accel\": ";
        append_double(out, row.ci.accel);
        out += ",\n      \"verdict\": ";
        append_escaped(out, verdict_name(row.v));
        out += ",\n      \"warnings\": ";
        append_string_array(out, row.ci.warnings, "      ");
        out += "\n    }";
    }
    out += r.rows.empty() ? "],\n" : "\n  ],\n";
    out += "  \"warnings\": ";
    append_string_array(out, r.warnings, "  ");
    out += "\n}\n";
    write_file(path, out);
}

void write_discrepancies(const std::vector<discrepancy>& rows, const std::string& subtask_id,
                         const std::string& path) {
    std::string out = "subtask\tpair\tgold\trescaled\tdelta\ts1\ts2\n";
    for (const auto& d : rows) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "\t%zu\t%.3f\t%.3f\t%.3f\t", d.index + 1, d.gold,
                      d.rescaled, d.delta);
        out += subtask_id;
        out += buf;
        out += d.s1;
        out += '\t';
        out += d.s2;
        out += '\n';
    }
    write_file(path, out);
}

}  // namespace corrsim
