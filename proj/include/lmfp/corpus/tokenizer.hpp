#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace lmfp {

inline constexpr std::string_view kLinkToken = "[LINK]";
inline constexpr std::string_view kNumToken = "[NUM]";

inline bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
inline bool is_ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline bool is_ascii_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Lowercases ASCII letters; other bytes (UTF-8 continuation etc.) pass through.
inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

/// True when the token has no ASCII letter or digit and every byte is ASCII punctuation.
inline bool is_punct_token(std::string_view tok) {
    if (tok.empty()) return false;
    for (char c : tok)
        if (!is_ascii_punct(c)) return false;
    return true;
}

/// Word-like token: contains an ASCII letter or digit, or is the link tag.
inline bool is_word_token(std::string_view tok) {
    if (tok == kLinkToken) return true;
    for (char c : tok)
        if (is_ascii_alnum(c)) return true;
    return false;
}

namespace detail {

inline bool starts_link(std::string_view text, std::size_t i) {
    auto starts = [&](std::string_view p) {
        if (text.size() - i < p.size()) return false;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (std::tolower(static_cast<unsigned char>(text[i + k])) != p[k]) return false;
        return true;
    };
    if (!(starts("http://") || starts("https://") || starts("www."))) return false;
    // Must begin a run or follow punctuation, so "awww." is not a link.
    return i == 0 || is_ascii_space(text[i - 1]) || is_ascii_punct(text[i - 1]);
}

}  // namespace detail

/// Replaces every hyperlink (maximal non-whitespace run starting with
/// http://, https:// or www.) by a standalone link tag.
inline std::string replace_links(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (detail::starts_link(text, i)) {
            std::size_t j = i;
            while (j < text.size() && !is_ascii_space(text[j])) ++j;
            out += ' ';
            out += kLinkToken;
            out += ' ';
            i = j;
        } else {
            out += text[i++];
        }
    }
    return out;
}

/// Whitespace split, then the leading and trailing ASCII punctuation runs of
/// each chunk become separate tokens. Interior punctuation stays. A chunk
/// equal to the link tag (any case) is kept whole.
inline std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_ascii_space(text[j])) ++j;
        if (j > i) {
            std::string_view chunk = text.substr(i, j - i);
            if (ascii_lower(chunk) == "[link]") {
                tokens.emplace_back(kLinkToken);
            } else {
                std::size_t a = 0;
                while (a < chunk.size() && is_ascii_punct(chunk[a])) ++a;
                if (a == chunk.size()) {
                    tokens.emplace_back(chunk);
                } else {
                    std::size_t b = chunk.size();
                    while (b > a && is_ascii_punct(chunk[b - 1])) --b;
                    if (a > 0) tokens.emplace_back(chunk.substr(0, a));
                    tokens.emplace_back(chunk.substr(a, b - a));
                    if (b < chunk.size()) tokens.emplace_back(chunk.substr(b));
                }
            }
        }
        i = j;
    }
    return tokens;
}

/// Full normalization used by preprocessing: lowercase, tag links, split.
inline std::vector<std::string> tokenize(std::string_view text) {
    return split_tokens(replace_links(ascii_lower(text)));
}

/// Same as tokenize but keeps the original letter case.
inline std::vector<std::string> tokenize_cased(std::string_view text) {
    return split_tokens(replace_links(text));
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

/// Sentence count: segments between runs of '.', '!' or '?' that contain a
/// non-space character. At least 1.
inline std::size_t count_sentences(std::string_view text) {
    std::size_t count = 0;
    bool content = false;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            if (content) ++count;
            content = false;
        } else if (!is_ascii_space(c)) {
            content = true;
        }
    }
    if (content) ++count;
    return count == 0 ? 1 : count;
}

}  // namespace lmfp
