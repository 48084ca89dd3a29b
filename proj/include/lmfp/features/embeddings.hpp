#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lmfp/core/io.hpp"

namespace lmfp::features {

inline constexpr std::size_t kEmbeddingDim = 768;

using EmbeddingTable = std::map<std::string, std::vector<double>>;

/// Lines: {"id": str, "vector": [768 reals]}.
inline EmbeddingTable load_embeddings(const std::filesystem::path& path, std::size_t dim = kEmbeddingDim) {
    EmbeddingTable table;
    const std::string src = path.string();
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        const auto id = require_field(obj, "id", json::value_t::string, src, line).get<std::string>();
        const auto& arr = require_field(obj, "vector", json::value_t::array, src, line);
        if (arr.size() != dim)
            throw ParseError(src, line, "embedding '" + id + "' has dimension " + std::to_string(arr.size()) +
                                            ", expected " + std::to_string(dim));
        std::vector<double> v;
        v.reserve(dim);
        for (const auto& x : arr) {
            if (!x.is_number()) throw ParseError(src, line, "embedding '" + id + "' has a non-numeric entry");
            v.push_back(x.get<double>());
        }
        if (!table.emplace(id, std::move(v)).second) throw ParseError(src, line, "duplicate embedding id '" + id + "'");
    });
    return table;
}

}  // namespace lmfp::features
