#pragma once

// Coarse rule/lexicon part-of-speech tagger. Closed-class words come from a
// small lexicon, open-class words are guessed from suffixes, NOUN otherwise.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmfp/corpus/tokenizer.hpp"
#include "lmfp/textstats/vocab.hpp"

namespace lmfp::features {

enum class Pos : int { Noun, Verb, Adj, Adv, Pron, Det, Adp, Conj, Num, Prt, Intj, Punct, Sym, Link, X };

inline constexpr std::size_t kPosCount = 15;

inline constexpr std::array<std::string_view, kPosCount> kPosNames{
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "CONJ", "NUM", "PRT", "INTJ", "PUNCT", "SYM", "LINK", "X"};

namespace detail {

struct LexEntry {
    std::string_view word;
    Pos tag;
};

// clang-format off
inline constexpr std::array<LexEntry, 120> kClosedClass{{
    {"a", Pos::Det}, {"an", Pos::Det}, {"the", Pos::Det}, {"this", Pos::Det}, {"that", Pos::Det},
    {"these", Pos::Det}, {"those", Pos::Det}, {"some", Pos::Det}, {"any", Pos::Det}, {"each", Pos::Det},
    {"every", Pos::Det}, {"no", Pos::Det}, {"all", Pos::Det}, {"both", Pos::Det}, {"many", Pos::Det},
    {"few", Pos::Det}, {"such", Pos::Det}, {"another", Pos::Det},
    {"i", Pos::Pron}, {"me", Pos::Pron}, {"my", Pos::Pron}, {"mine", Pos::Pron}, {"you", Pos::Pron},
    {"your", Pos::Pron}, {"yours", Pos::Pron}, {"he", Pos::Pron}, {"him", Pos::Pron}, {"his", Pos::Pron},
    {"she", Pos::Pron}, {"her", Pos::Pron}, {"hers", Pos::Pron}, {"it", Pos::Pron}, {"its", Pos::Pron},
    {"we", Pos::Pron}, {"us", Pos::Pron}, {"our", Pos::Pron}, {"they", Pos::Pron}, {"them", Pos::Pron},
    {"their", Pos::Pron}, {"who", Pos::Pron}, {"whom", Pos::Pron}, {"what", Pos::Pron}, {"which", Pos::Pron},
    {"myself", Pos::Pron}, {"yourself", Pos::Pron}, {"itself", Pos::Pron}, {"themselves", Pos::Pron},
    {"someone", Pos::Pron}, {"something", Pos::Pron}, {"anyone", Pos::Pron}, {"everyone", Pos::Pron},
    {"nothing", Pos::Pron}, {"everything", Pos::Pron},
    {"in", Pos::Adp}, {"on", Pos::Adp}, {"at", Pos::Adp}, {"by", Pos::Adp}, {"for", Pos::Adp},
    {"with", Pos::Adp}, {"about", Pos::Adp}, {"from", Pos::Adp}, {"of", Pos::Adp}, {"into", Pos::Adp},
    {"over", Pos::Adp}, {"under", Pos::Adp}, {"after", Pos::Adp}, {"before", Pos::Adp}, {"through", Pos::Adp},
    {"between", Pos::Adp}, {"during", Pos::Adp}, {"without", Pos::Adp}, {"against", Pos::Adp},
    {"upon", Pos::Adp}, {"like", Pos::Adp}, {"than", Pos::Adp},
    {"and", Pos::Conj}, {"or", Pos::Conj}, {"but", Pos::Conj}, {"nor", Pos::Conj}, {"so", Pos::Conj},
    {"yet", Pos::Conj}, {"because", Pos::Conj}, {"although", Pos::Conj}, {"while", Pos::Conj},
    {"if", Pos::Conj}, {"whether", Pos::Conj}, {"unless", Pos::Conj},
    {"to", Pos::Prt}, {"not", Pos::Prt}, {"up", Pos::Prt}, {"out", Pos::Prt}, {"off", Pos::Prt},
    {"down", Pos::Prt},
    {"oh", Pos::Intj}, {"yes", Pos::Intj}, {"yeah", Pos::Intj}, {"wow", Pos::Intj}, {"hey", Pos::Intj},
    {"lol", Pos::Intj}, {"ok", Pos::Intj}, {"okay", Pos::Intj}, {"please", Pos::Intj},
    {"is", Pos::Verb}, {"are", Pos::Verb}, {"was", Pos::Verb}, {"were", Pos::Verb}, {"be", Pos::Verb},
    {"been", Pos::Verb}, {"am", Pos::Verb}, {"have", Pos::Verb}, {"has", Pos::Verb}, {"had", Pos::Verb},
    {"do", Pos::Verb}, {"does", Pos::Verb}, {"did", Pos::Verb}, {"can", Pos::Verb}, {"will", Pos::Verb},
    {"would", Pos::Verb}, {"should", Pos::Verb}, {"could", Pos::Verb},
}};
// clang-format on

inline bool ends_with(std::string_view w, std::string_view suf) {
    return w.size() > suf.size() + 1 && w.substr(w.size() - suf.size()) == suf;
}

}  // namespace detail

inline Pos tag_token(std::string_view tok) {
    if (tok == kLinkToken) return Pos::Link;
    if (textstats::is_numeric_token(tok)) return Pos::Num;
    if (is_punct_token(tok)) return Pos::Punct;
    bool alpha = false, digit = false, other = false;
    for (char c : tok) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalpha(u))
            alpha = true;
        else if (std::isdigit(u))
            digit = true;
        else if (c != '\'' && c != '-')
            other = true;
    }
    if (!alpha && !digit) return Pos::Sym;
    if (digit || other) return Pos::X;
    const std::string w = ascii_lower(tok);
    for (const auto& e : detail::kClosedClass)
        if (e.word == w) return e.tag;
    using detail::ends_with;
    if (ends_with(w, "ly")) return Pos::Adv;
    if (ends_with(w, "ing") || ends_with(w, "ed") || ends_with(w, "ize") || ends_with(w, "ise") || ends_with(w, "ify"))
        return Pos::Verb;
    for (auto suf : {"ous", "ful", "able", "ible", "al", "ive", "less", "ic", "ish", "est"})
        if (ends_with(w, suf)) return Pos::Adj;
    return Pos::Noun;
}

inline std::vector<Pos> tag(const std::vector<std::string>& tokens) {
    std::vector<Pos> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(tag_token(t));
    return out;
}

/// Bigram code in [0, 225).
inline int pos_bigram_code(Pos a, Pos b) { return static_cast<int>(a) * static_cast<int>(kPosCount) + static_cast<int>(b); }

inline std::string pos_bigram_name(int code) {
    return std::string(kPosNames[static_cast<std::size_t>(code) / kPosCount]) + "_" +
           std::string(kPosNames[static_cast<std::size_t>(code) % kPosCount]);
}

}  // namespace lmfp::features
