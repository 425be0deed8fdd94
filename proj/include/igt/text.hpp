#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the parsers. Case mapping covers ASCII,
// Latin-1 and Latin Extended-A, which is what Turkish and the ODIN
// European-language data need; other scripts pass through unchanged.
namespace igt::text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Sentence punctuation split off the end of gloss and analyzer tokens.
inline bool is_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
}

inline bool is_all_punct(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_punct(c)) return false;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string> split_ws_copy(std::string_view s) {
  std::vector<std::string> out;
  for (auto piece : split_ws(s)) out.emplace_back(piece);
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string normalize_whitespace(std::string_view s) {
  std::string out;
  for (auto piece : split_ws(s)) {
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

inline std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
      static_cast<unsigned char>(s[1]) == 0xBB && static_cast<unsigned char>(s[2]) == 0xBF)
    s.remove_prefix(3);
  return s;
}

/// Splits on '\n', dropping a trailing '\r' from each line. A final newline
/// does not produce an empty trailing line.
inline std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find('\n', start);
    if (end == std::string_view::npos) end = s.size();
    auto line = s.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
}

namespace detail {

// Decodes one code point at s[i]; malformed bytes decode as themselves.
inline char32_t decode(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80 || i + 1 >= s.size()) {
    ++i;
    return b0;
  }
  const auto b1 = static_cast<unsigned char>(s[i + 1]);
  if ((b0 & 0xE0) == 0xC0 && (b1 & 0xC0) == 0x80) {
    i += 2;
    return (char32_t(b0 & 0x1F) << 6) | char32_t(b1 & 0x3F);
  }
  ++i;
  return b0;
}

inline void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(cp);  // not produced by the mappings below
  }
}

inline bool latin_ext_upper_even(char32_t cp) {
  return (cp >= 0x100 && cp <= 0x137 && cp != 0x130 && cp != 0x131) ||
         (cp >= 0x14A && cp <= 0x177);
}

inline bool latin_ext_upper_odd(char32_t cp) {
  return (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
}

inline bool is_upper_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  if (cp == 0x130 || cp == 0x178) return true;
  if (latin_ext_upper_even(cp)) return cp % 2 == 0;
  if (latin_ext_upper_odd(cp)) return cp % 2 == 1;
  return false;
}

inline char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x130) return 'i';
  if (cp == 0x178) return 0xFF;
  if (latin_ext_upper_even(cp) && cp % 2 == 0) return cp + 1;
  if (latin_ext_upper_odd(cp) && cp % 2 == 1) return cp + 1;
  return cp;
}

inline char32_t upper_cp(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 32;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 0x20;
  if (cp == 0xFF) return 0x178;
  if (latin_ext_upper_even(cp) && cp % 2 == 1 && latin_ext_upper_even(cp - 1)) return cp - 1;
  if (latin_ext_upper_odd(cp) && cp % 2 == 0 && latin_ext_upper_odd(cp - 1)) return cp - 1;
  return cp;
}

}  // namespace detail

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) detail::encode(detail::lower_cp(detail::decode(s, i)), out);
  return out;
}

inline std::string ascii_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  return out;
}

inline bool starts_upper(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  return detail::is_upper_cp(detail::decode(s, i));
}

inline std::string capitalize_first(std::string_view s) {
  if (s.empty()) return {};
  std::size_t i = 0;
  std::string out;
  detail::encode(detail::upper_cp(detail::decode(s, i)), out);
  out.append(s.substr(i));
  return out;
}

}  // namespace igt::text
