#pragma once

#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "lmfp/core/io.hpp"
#include "lmfp/core/matrix.hpp"

namespace lmfp::features {

/// Labeled feature rows. `shape` is the per-sample shape: {D} for flat
/// vectors, {length, channels} for sequences (row-major inside a row).
struct FeatureSet {
    std::string kind;
    std::vector<std::size_t> shape;
    std::vector<std::string> classes;
    std::vector<std::string> ids;
    std::vector<std::size_t> labels;
    Matrix X;

    [[nodiscard]] std::size_t size() const { return ids.size(); }
    [[nodiscard]] std::size_t width() const {
        return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
    }
};

/// First line: {"format": "lmfp-features", "version": 1, "kind", "shape",
/// "classes", "rows"}; then one {"id", "class", "values"} line per sample.
inline std::string to_jsonl(const FeatureSet& fs) {
    json header{{"format", "lmfp-features"}, {"version", 1},        {"kind", fs.kind},
                {"shape", fs.shape},         {"classes", fs.classes}, {"rows", fs.size()}};
    std::string out = header.dump() + "\n";
    for (std::size_t i = 0; i < fs.size(); ++i) {
        json row;
        row["id"] = fs.ids[i];
        row["class"] = fs.classes[fs.labels[i]];
        row["values"] = std::vector<double>(fs.X.row(static_cast<Eigen::Index>(i)).begin(), fs.X.row(static_cast<Eigen::Index>(i)).end());
        out += row.dump();
        out += '\n';
    }
    return out;
}

inline void save_features(const std::filesystem::path& path, const FeatureSet& fs) { write_file(path, to_jsonl(fs)); }

inline FeatureSet load_features(const std::filesystem::path& path) {
    FeatureSet fs;
    bool have_header = false;
    std::size_t width = 0;
    std::vector<std::vector<double>> rows;
    const std::string src = path.string();
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        if (!have_header) {
            if (obj.value("format", "") != "lmfp-features") throw ParseError(src, line, "missing lmfp-features header");
            if (obj.value("version", 0) != 1) throw ParseError(src, line, "unsupported feature file version");
            fs.kind = require_field(obj, "kind", json::value_t::string, src, line).get<std::string>();
            fs.shape = require_field(obj, "shape", json::value_t::array, src, line).get<std::vector<std::size_t>>();
            fs.classes = require_field(obj, "classes", json::value_t::array, src, line).get<std::vector<std::string>>();
            if (fs.shape.empty()) throw ParseError(src, line, "empty shape");
            width = fs.width();
            have_header = true;
            return;
        }
        const auto id = require_field(obj, "id", json::value_t::string, src, line).get<std::string>();
        const auto cls = require_field(obj, "class", json::value_t::string, src, line).get<std::string>();
        auto it = std::find(fs.classes.begin(), fs.classes.end(), cls);
        if (it == fs.classes.end()) throw ParseError(src, line, "class '" + cls + "' not in header");
        const auto& vals = require_field(obj, "values", json::value_t::array, src, line);
        if (vals.size() != width)
            throw ParseError(src, line, "row '" + id + "' has " + std::to_string(vals.size()) + " values, expected " + std::to_string(width));
        std::vector<double> v;
        v.reserve(width);
        for (const auto& x : vals) {
            if (!x.is_number()) throw ParseError(src, line, "row '" + id + "' has a non-numeric value");
            v.push_back(x.get<double>());
        }
        fs.ids.push_back(id);
        fs.labels.push_back(static_cast<std::size_t>(it - fs.classes.begin()));
        rows.push_back(std::move(v));
    });
    if (!have_header) throw ParseError(src, 0, "empty feature file");
    fs.X.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t d = 0; d < width; ++d) fs.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = rows[i][d];
    return fs;
}

}  // namespace lmfp::features
