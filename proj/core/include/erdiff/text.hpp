#pragma once

#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. All strings handled by the library are UTF-8.
namespace erdiff::text {

/// Canonical composition (NFC). Invalid UTF-8 is passed through unchanged.
std::string nfc(std::string_view utf8);

/// Full Unicode lowercase mapping (root locale), ASCII fast path.
std::string to_lower(std::string_view utf8);

/// Splits on Unicode white space; empty pieces are dropped.
std::vector<std::string> split_whitespace(std::string_view utf8);

/// Removes code points in the Unicode punctuation categories.
std::string strip_punctuation(std::string_view utf8);

/// Splits a UTF-8 string into its code points, each returned as the UTF-8
/// byte sequence of that code point.
std::vector<std::string_view> code_points(std::string_view utf8);

}  // namespace erdiff::text
