#include "erdiff/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>
#include <unicode/utf8.h>

#include <algorithm>

namespace erdiff::text {
namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' ||
         c == '\x1c' || c == '\x1d' || c == '\x1e' || c == '\x1f';
}

}  // namespace

std::string nfc(std::string_view utf8) {
  if (is_ascii(utf8)) return std::string(utf8);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(utf8);
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) return std::string(utf8);
  std::string out;
  dst.toUTF8String(out);
  return out;
}

std::string to_lower(std::string_view utf8) {
  if (is_ascii(utf8)) {
    std::string out(utf8);
    for (char& c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
  }
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<std::string> split_whitespace(std::string_view utf8) {
  std::vector<std::string> out;
  if (is_ascii(utf8)) {
    std::size_t i = 0;
    while (i < utf8.size()) {
      while (i < utf8.size() && ascii_space(utf8[i])) ++i;
      std::size_t start = i;
      while (i < utf8.size() && !ascii_space(utf8[i])) ++i;
      if (i > start) out.emplace_back(utf8.substr(start, i - start));
    }
    return out;
  }
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < length) {
    int32_t before = i;
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    bool space = cp >= 0 && u_isUWhiteSpace(cp);
    if (space) {
      if (start >= 0) out.emplace_back(utf8.substr(start, before - start));
      start = -1;
    } else if (start < 0) {
      start = before;
    }
  }
  if (start >= 0) out.emplace_back(utf8.substr(start));
  return out;
}

std::string strip_punctuation(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    int32_t before = i;
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    if (cp >= 0 && u_ispunct(cp)) continue;
    out.append(utf8.substr(before, i - before));
  }
  return out;
}

std::vector<std::string_view> code_points(std::string_view utf8) {
  std::vector<std::string_view> out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    int32_t before = i;
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    out.push_back(utf8.substr(before, i - before));
  }
  return out;
}

}  // namespace erdiff::text
