#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmfp/core/error.hpp"
#include "lmfp/corpus/corpus.hpp"

namespace lmfp::features {

inline constexpr std::size_t kGloveDim = 100;
inline constexpr std::size_t kSequenceLength = kMaxTokens;

struct GloveTable {
    std::size_t dim = kGloveDim;
    std::unordered_map<std::string, std::vector<double>> vectors;
};

/// Whitespace text format: token followed by `dim` reals per line.
inline GloveTable load_glove(const std::filesystem::path& path, std::size_t dim = kGloveDim) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    GloveTable table;
    table.dim = dim;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string_view> fields;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) fields.emplace_back(line.data() + i, j - i);
            i = j;
        }
        if (fields.size() != dim + 1)
            throw ParseError(path.string(), lineno,
                             "expected token and " + std::to_string(dim) + " values, got " + std::to_string(fields.size()) + " fields");
        std::vector<double> v(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const auto f = fields[k + 1];
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v[k]);
            if (ec != std::errc{} || p != f.data() + f.size())
                throw ParseError(path.string(), lineno, "bad number '" + std::string(f) + "'");
        }
        table.vectors[std::string(fields[0])] = std::move(v);
    }
    return table;
}

/// Row-major kSequenceLength x dim; out-of-vocabulary and padding rows are 0.
inline std::vector<double> glove_matrix(const TokenizedComment& comment, const GloveTable& table) {
    std::vector<double> m(kSequenceLength * table.dim, 0.0);
    const std::size_t n = std::min(comment.tokens.size(), kSequenceLength);
    for (std::size_t t = 0; t < n; ++t) {
        auto it = table.vectors.find(comment.tokens[t]);
        if (it == table.vectors.end()) continue;
        std::copy(it->second.begin(), it->second.end(), m.begin() + static_cast<std::ptrdiff_t>(t * table.dim));
    }
    return m;
}

}  // namespace lmfp::features
