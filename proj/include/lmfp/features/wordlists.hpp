#pragma once

// Versioned word lists used by the Writeprints extractor. Changing either list
// changes feature layout or values; bump the version when you do.

#include <algorithm>
#include <array>
#include <string_view>

namespace lmfp::features {

inline constexpr int kWordListVersion = 1;

/// 100 English function words; index = Writeprints slot.
inline constexpr std::array<std::string_view, 100> kFunctionWords{
    "the",     "of",      "and",   "a",      "to",     "in",    "is",     "you",   "that",   "it",
    "he",      "was",     "for",   "on",     "are",    "as",    "with",   "his",   "they",   "i",
    "at",      "be",      "this",  "have",   "from",   "or",    "one",    "had",   "by",     "but",
    "not",     "what",    "all",   "were",   "we",     "when",  "your",   "can",   "there",  "an",
    "which",   "she",     "do",    "their",  "if",     "will",  "up",     "other", "about",  "out",
    "many",    "then",    "them",  "these",  "so",     "some",  "her",    "would", "him",    "into",
    "has",     "more",    "two",   "could",  "my",     "than",  "been",   "who",   "its",    "now",
    "did",     "down",    "only",  "may",    "over",   "any",   "after",  "our",   "me",     "very",
    "should",  "through", "just",  "those",  "most",   "us",    "because", "does", "each",   "such",
    "while",   "why",     "how",   "where",  "both",   "might", "must",   "upon",  "whether", "although",
};

/// Common English words for the misspelling rate. Function words count as
/// known as well. Sorted for binary search.
inline constexpr auto kDictionary = [] {
    std::array<std::string_view, 430> words{
        "able", "above", "accept", "across", "act", "actually", "add", "afraid", "again", "against", "age",
        "ago", "agree", "air", "almost", "alone", "along", "already", "also", "always", "am", "amount", "animal",
        "another", "answer", "anyone", "anything", "appear", "area", "argument", "arm", "around", "art", "ask",
        "away", "back", "bad", "bank", "base", "bed", "before", "begin", "behind", "believe", "best", "better",
        "between", "big", "bit", "black", "blood", "blue", "board", "body", "book", "born", "bring", "brother",
        "build", "business", "buy", "call", "car", "care", "carry", "case", "cause", "center", "certain", "chance",
        "change", "check", "child", "children", "choose", "city", "class", "clear", "close", "cold", "college",
        "color", "come", "common", "community", "company", "consider", "continue", "control", "cost", "country",
        "course", "cover", "create", "cut", "dark", "data", "day", "dead", "deal", "death", "decide", "deep",
        "different", "difficult", "dinner", "dog", "door", "doubt", "draw", "dream", "drink", "drive", "drop",
        "during", "early", "easy", "eat", "economy", "effect", "either", "else", "end", "enjoy", "enough", "even",
        "evening", "event", "ever", "every", "everyone", "everything", "exactly", "example", "expect", "experience",
        "eye", "face", "fact", "fail", "fall", "family", "far", "fast", "father", "fear", "feel", "few", "field",
        "fight", "figure", "fill", "film", "final", "find", "fine", "fire", "first", "fish", "five", "floor", "fly",
        "follow", "food", "foot", "force", "forget", "form", "four", "free", "friend", "front", "full", "fun",
        "future", "game", "general", "get", "girl", "give", "glad", "go", "god", "good", "government", "great",
        "green", "ground", "group", "grow", "guess", "guy", "hair", "half", "hand", "happen", "happy", "hard",
        "hate", "head", "health", "hear", "heart", "help", "here", "high", "history", "hit", "hold", "home", "hope",
        "hot", "hour", "house", "huge", "human", "idea", "important", "include", "increase", "information",
        "instead", "interest", "issue", "job", "join", "keep", "key", "kid", "kill", "kind", "know", "land",
        "language", "large", "last", "late", "later", "laugh", "law", "lead", "learn", "least", "leave", "left",
        "less", "let", "life", "light", "like", "line", "list", "listen", "little", "live", "local", "long", "look",
        "lose", "lot", "love", "low", "main", "make", "man", "market", "matter", "mean", "meet", "member", "men",
        "mind", "minute", "miss", "moment", "money", "month", "morning", "mother", "move", "much", "music", "name",
        "need", "never", "new", "news", "next", "nice", "night", "no", "nothing", "number", "off", "often", "oh",
        "ok", "okay", "old", "once", "open", "order", "own", "page", "pain", "paper", "parent", "part", "party",
        "pass", "past", "pay", "people", "person", "pick", "place", "plan", "play", "point", "police", "policy",
        "political", "post", "power", "pretty", "price", "probably", "problem", "process", "product", "program",
        "pull", "put", "question", "quite", "rather", "read", "ready", "real", "really", "reason", "red",
        "remember", "report", "rest", "result", "right", "road", "room", "rule", "run", "same", "say", "school",
        "see", "seem", "sell", "send", "sense", "serious", "set", "show", "side", "simple", "since", "sit", "small",
        "social", "someone", "something", "song", "soon", "sorry", "sound", "speak", "stand", "start", "state",
        "stay", "still", "stop", "story", "street", "strong", "student", "study", "stuff", "support", "sure",
        "system", "take", "talk", "team", "tell", "thing", "think", "three", "time", "today", "together", "too",
        "top", "true", "try", "turn", "under", "understand", "until", "use", "want", "war", "watch", "water", "way",
        "week", "well", "whole", "wife", "win", "woman", "word", "work", "world", "write", "wrong", "yeah", "year",
        "yes", "yet", "young",
    };
    std::sort(words.begin(), words.end());
    return words;
}();

inline bool in_dictionary(std::string_view w) {
    return std::binary_search(kDictionary.begin(), kDictionary.end(), w) ||
           std::find(kFunctionWords.begin(), kFunctionWords.end(), w) != kFunctionWords.end();
}

inline int function_word_index(std::string_view w) {
    auto it = std::find(kFunctionWords.begin(), kFunctionWords.end(), w);
    return it == kFunctionWords.end() ? -1 : static_cast<int>(it - kFunctionWords.begin());
}

}  // namespace lmfp::features
