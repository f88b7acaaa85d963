#pragma once

#include <set>
#include <string>

namespace pmas {

// Concept vocabulary of a text: lowercase alphanumeric tokens of length >= 3
// after stop-word removal, plus bigrams over adjacent surviving tokens.
// The stop-word list is fixed and documented in docs/formats.md.
std::set<std::string> extract_vocabulary(const std::string& text);

bool is_stop_word(const std::string& token);

} // namespace pmas
