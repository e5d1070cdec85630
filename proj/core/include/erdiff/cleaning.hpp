#pragma once

#include <span>
#include <string>
#include <string_view>

namespace erdiff {

/// Porter's original suffix-stripping algorithm. The input is lowercased
/// (ASCII) first; words are otherwise taken as-is, including very short ones.
std::string porter_stem(std::string_view word);

/// The pinned English stop-word list, sorted.
std::span<const std::string_view> stop_words();
bool is_stop_word(std::string_view lowercase_token);

/// Identifies the stop-word list and stemmer variant in bundle manifests.
inline constexpr std::string_view kStopWordListId = "scikit-learn ENGLISH_STOP_WORDS (318 words)";
inline constexpr std::string_view kStemmerId = "porter-1980-original";

/// Lowercases, drops stop words, stems what remains and joins with single
/// spaces.
std::string clean_text(std::string_view value);

}  // namespace erdiff
