#include "corrsim/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "corrsim/error.hpp"

namespace corrsim {
namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw parse_error(path + ":" + std::to_string(line) + ": " + what);
}

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

bool is_blank(const std::string& s) {
    for (char c : s)
        if (c != ' ' && c != '\t') return false;
    return true;
}

// Splits on runs of spaces/tabs. Returns views into `line`.
void split_fields(const std::string& line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t b = i;
        while (i < n && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > b) out.emplace_back(line.data() + b, i - b);
    }
}

bool parse_double(std::string_view s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_count(std::string_view s, std::size_t& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

}  // namespace

embedding_store load_embeddings(const std::string& path, embedding_format fmt,
                                const std::unordered_set<std::string>* vocab_filter,
                                load_stats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path + ": cannot open");

    load_stats local;
    load_stats& st = stats ? *stats : local;
    st = load_stats{};

    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string_view> fields;

    // Peek at line 1 for format detection / the word2vec header.
    if (!std::getline(in, line)) throw parse_error(path + ": empty file");
    ++lineno;
    strip_cr(line);
    split_fields(line, fields);

    bool word2vec = fmt == embedding_format::word2vec_text;
    if (fmt == embedding_format::auto_detect) {
        std::size_t a = 0, b = 0;
        word2vec = fields.size() == 2 && parse_count(fields[0], a) && parse_count(fields[1], b);
    }

    std::size_t dim = 0;
    if (word2vec) {
        std::size_t declared_dim = 0;
        if (fields.size() != 2 || !parse_count(fields[0], st.declared_count) ||
            !parse_count(fields[1], declared_dim) || declared_dim == 0)
            fail(path, lineno, "expected word2vec header 'count dim'");
        dim = declared_dim;
        if (!std::getline(in, line)) {
            line.clear();
            in.clear(std::ios::eofbit);
        } else {
            ++lineno;
            strip_cr(line);
        }
    }

    std::vector<std::string> tokens;
    std::vector<double> values;
    std::unordered_map<std::string, std::size_t, embedding_store::sv_hash, embedding_store::sv_eq>
        index;
    std::vector<double> row;

    const auto consume_line = [&]() {
        if (is_blank(line)) return;  // tolerate trailing blank lines
        split_fields(line, fields);
        if (fields.size() < 2) fail(path, lineno, "expected 'token v1 ... vD'");
        if (dim == 0) dim = fields.size() - 1;
        if (fields.size() - 1 != dim)
            fail(path, lineno, "expected " + std::to_string(dim) + " values, found " +
                                   std::to_string(fields.size() - 1));
        const std::string_view token = fields[0];
        if (vocab_filter && !vocab_filter->contains(std::string(token))) {
            ++st.skipped_filtered;
            return;
        }
        if (index.find(token) != index.end()) {
            ++st.duplicates;
            return;
        }
        row.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            double x;
            if (!parse_double(fields[j + 1], x))
                fail(path, lineno, "bad value '" + std::string(fields[j + 1]) + "'");
            if (!std::isfinite(x))
                fail(path, lineno, "non-finite value '" + std::string(fields[j + 1]) + "'");
            row[j] = x;
        }
        index.emplace(std::string(token), tokens.size());
        tokens.emplace_back(token);
        values.insert(values.end(), row.begin(), row.end());
    };

    if (!in.eof() || !line.empty()) consume_line();
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        consume_line();
    }

    if (tokens.empty())
        throw parse_error(path + ": no embedding rows" +
                          std::string(vocab_filter ? " left after vocabulary filtering" : ""));

    st.kept = tokens.size();
    if (word2vec && st.kept + st.skipped_filtered + st.duplicates != st.declared_count)
        st.header_mismatch = true;

    embedding_store store;
    store.tokens_ = std::move(tokens);
    store.index_ = std::move(index);
    store.vectors_ = matrix(store.tokens_.size(), dim);
    std::copy(values.begin(), values.end(), store.vectors_.data());
    return store;
}

void save_embeddings(const embedding_store& store, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw error(path + ": cannot open for writing");
    for (std::size_t i = 0; i < store.size(); ++i) {
        std::fputs(store.tokens()[i].c_str(), f);
        const double* v = store.vector_at(i);
        for (std::size_t j = 0; j < store.dim(); ++j) std::fprintf(f, " %.6g", v[j]);
        std::fputc('\n', f);
    }
    if (std::fclose(f) != 0) throw error(path + ": write failed");
}

sentence_matrix_result sentence_matrix(const embedding_store& store,
                                       std::span<const std::string> tokens) {
    sentence_matrix_result res;
    std::vector<const double*> rows;
    for (const auto& t : tokens) {
        if (const double* v = store.find(t)) {
            rows.push_back(v);
            res.used.push_back(t);
        } else {
            res.oov.push_back(t);
        }
    }
    if (rows.empty()) throw empty_sentence("no in-vocabulary tokens in sentence");
    res.m = matrix(rows.size(), store.dim());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i], rows[i] + store.dim(), res.m.row(i));
    return res;
}

}  // namespace corrsim
