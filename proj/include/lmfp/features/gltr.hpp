#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lmfp/core/io.hpp"

namespace lmfp::features {

enum class LmSource { Bert, Gpt2 };

inline std::string to_string(LmSource s) { return s == LmSource::Bert ? "bert" : "gpt2"; }

struct LikelihoodRecord {
    std::string id;
    LmSource source = LmSource::Bert;
    std::vector<double> probs;
    std::vector<std::int64_t> ranks;
};

inline constexpr std::size_t kRankBins = 10;
inline constexpr std::size_t kGltrDim = 2 * (1 + kRankBins);

/// Inclusive upper edges of the first nine rank bins; the tenth is open.
inline constexpr std::array<std::int64_t, kRankBins - 1> kRankBinUpper{1, 5, 10, 25, 50, 100, 250, 500, 1000};

inline std::size_t rank_bin(std::int64_t rank) {
    if (rank < 1) throw InvalidArgument("rank must be >= 1, got " + std::to_string(rank));
    for (std::size_t b = 0; b < kRankBinUpper.size(); ++b)
        if (rank <= kRankBinUpper[b]) return b;
    return kRankBins - 1;
}

inline void validate(const LikelihoodRecord& r) {
    if (r.probs.empty()) throw InvalidArgument("likelihood record '" + r.id + "' is empty");
    if (r.probs.size() != r.ranks.size())
        throw InvalidArgument("likelihood record '" + r.id + "': probs and ranks differ in length");
    for (double p : r.probs)
        if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("likelihood record '" + r.id + "': probability outside (0,1]");
    for (auto k : r.ranks)
        if (k < 1) throw InvalidArgument("likelihood record '" + r.id + "': rank < 1");
}

/// Both sources for one comment.
struct LikelihoodPair {
    std::optional<LikelihoodRecord> bert;
    std::optional<LikelihoodRecord> gpt2;
};

using LikelihoodTable = std::map<std::string, LikelihoodPair>;

/// Lines: {"id": str, "source": "bert"|"gpt2", "probs": [...], "ranks": [...]}.
inline LikelihoodTable load_likelihoods(const std::filesystem::path& path) {
    LikelihoodTable table;
    const std::string src = path.string();
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        LikelihoodRecord r;
        r.id = require_field(obj, "id", json::value_t::string, src, line).get<std::string>();
        const auto source = require_field(obj, "source", json::value_t::string, src, line).get<std::string>();
        if (source == "bert")
            r.source = LmSource::Bert;
        else if (source == "gpt2")
            r.source = LmSource::Gpt2;
        else
            throw ParseError(src, line, "unknown source '" + source + "'");
        const auto& probs = require_field(obj, "probs", json::value_t::array, src, line);
        const auto& ranks = require_field(obj, "ranks", json::value_t::array, src, line);
        try {
            r.probs = probs.get<std::vector<double>>();
            r.ranks = ranks.get<std::vector<std::int64_t>>();
            validate(r);
        } catch (const json::exception& e) {
            throw ParseError(src, line, std::string("bad probs/ranks: ") + e.what());
        } catch (const InvalidArgument& e) {
            throw ParseError(src, line, e.what());
        }
        auto& slot = r.source == LmSource::Bert ? table[r.id].bert : table[r.id].gpt2;
        if (slot) throw ParseError(src, line, "duplicate record for id '" + r.id + "' source " + source);
        slot = std::move(r);
    });
    return table;
}

using GltrVector = std::array<double, kGltrDim>;

/// Per source: mean token probability then 10 rank-bin fractions; bert first.
inline GltrVector gltr_features(const std::string& id, const LikelihoodPair& pair) {
    GltrVector v{};
    std::size_t off = 0;
    for (auto [rec, source] : {std::pair{&pair.bert, LmSource::Bert}, std::pair{&pair.gpt2, LmSource::Gpt2}}) {
        if (!*rec) throw InvalidArgument("comment '" + id + "' has no " + to_string(source) + " likelihood record");
        const auto& r = **rec;
        validate(r);
        double sum = 0.0;
        for (double p : r.probs) sum += p;
        const double n = static_cast<double>(r.probs.size());
        v[off] = sum / n;
        for (auto k : r.ranks) v[off + 1 + rank_bin(k)] += 1.0;
        for (std::size_t b = 0; b < kRankBins; ++b) v[off + 1 + b] /= n;
        off += 1 + kRankBins;
    }
    return v;
}

}  // namespace lmfp::features
