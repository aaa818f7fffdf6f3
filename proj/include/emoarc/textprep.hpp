#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace emoarc {

/// Lowercase tokens made only of letters (plus combining marks attached to
/// a letter).
using TokenList = std::vector<std::string>;

/// Lowercases, strips URLs, drops any letter/digit run that contains a
/// digit, then splits on every non-letter code point. Invalid UTF-8 bytes
/// act as separators.
TokenList tokenize(std::string_view text);

/// Per-code-point simple lowercase mapping of UTF-8 text.
std::string to_lower(std::string_view text);

bool contains_whitespace(std::string_view text);

}  // namespace emoarc
