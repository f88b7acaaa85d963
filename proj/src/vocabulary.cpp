#include "pmas/vocabulary.hpp"

#include <array>
#include <vector>

#include "pmas/common.hpp"

namespace pmas {

namespace {

constexpr std::array<const char*, 38> kStopWords = {
    "a",    "an",   "and",  "are",  "as",    "at",   "be",    "been", "but",  "by",
    "for",  "from", "had",  "has",  "have",  "if",   "in",    "into", "is",   "it",
    "its",  "no",   "nor",  "not",  "of",    "on",   "or",    "such", "that", "the",
    "their", "then", "there", "these", "they", "this", "to",    "with",
};

} // namespace

bool is_stop_word(const std::string& token) {
    for (const char* w : kStopWords) {
        if (token == w) return true;
    }
    return false;
}

std::set<std::string> extract_vocabulary(const std::string& text) {
    std::vector<std::string> kept;
    for (auto& tok : alnum_tokens(text)) {
        if (tok.size() >= 3 && !is_stop_word(tok)) kept.push_back(std::move(tok));
    }
    std::set<std::string> vocab(kept.begin(), kept.end());
    for (size_t i = 0; i + 1 < kept.size(); ++i) {
        vocab.insert(kept[i] + " " + kept[i + 1]);
    }
    return vocab;
}

} // namespace pmas
