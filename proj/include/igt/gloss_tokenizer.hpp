#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"
#include "igt/igt_model.hpp"
#include "igt/normalization_table.hpp"
#include "igt/text.hpp"

namespace igt {

namespace detail {

inline bool all_caps_or_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))) return false;
  return true;
}

inline bool has_digit(std::string_view s) {
  for (char c : s)
    if (c >= '0' && c <= '9') return true;
  return false;
}

// Word-initial segments are usually lemmas, so they need stronger evidence:
// all-caps of length >= 2 ("3SG", "IC"), any digit, or an exact registry hit.
// A lone capital ("I") stays a lemma.
inline bool initial_is_label(std::string_view seg, const NormalizationTable& table) {
  if (all_caps_or_digits(seg) && (seg.size() >= 2 || has_digit(seg))) return true;
  return table.in_registry(seg);
}

// After a delimiter a capital initial marks a label even when the table
// does not know it ("admire-Progr.-Rep.Past"), so it can be reported.
inline bool inner_is_label(std::string_view seg, const NormalizationTable& table) {
  return all_caps_or_digits(seg) || (seg.front() >= 'A' && seg.front() <= 'Z') || table.is_known_label(seg);
}

// Splits a token body (trailing punctuation already removed) into morphs.
inline std::vector<GlossMorph> split_morphs(std::string_view body, const NormalizationTable& table) {
  struct Segment {
    std::string text;
    Joiner joiner;
  };
  std::vector<Segment> segs{{"", Joiner::WordInitial}};
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (!is_joiner_char(c)) {
      segs.back().text += c;
      continue;
    }
    // "Progr.-Rep": a period closing an abbreviation right before another
    // delimiter belongs to the abbreviation.
    if (c == '.' && !segs.back().text.empty() && i + 1 < body.size() &&
        (body[i + 1] == '-' || body[i + 1] == '=')) {
      segs.back().text += c;
      continue;
    }
    segs.push_back({"", joiner_for(c)});
  }

  bool any_empty = false;
  for (const auto& s : segs) any_empty = any_empty || s.text.empty();
  if (any_empty) return {GlossMorph{MorphKind::Lemma, std::string(body), Joiner::WordInitial, true}};

  std::vector<GlossMorph> morphs;
  morphs.reserve(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const bool label = i == 0 ? initial_is_label(segs[i].text, table) : inner_is_label(segs[i].text, table);
    morphs.push_back({label ? MorphKind::Label : MorphKind::Lemma, std::move(segs[i].text), segs[i].joiner, false});
  }
  return morphs;
}

}  // namespace detail

/// Splits one trailing run of sentence punctuation off `word`.
/// Returns {body, punctuation}; body is empty when `word` is all punctuation.
inline std::pair<std::string_view, std::string_view> split_trailing_punct(std::string_view word) {
  std::size_t end = word.size();
  while (end > 0 && text::is_punct(word[end - 1])) --end;
  return {word.substr(0, end), word.substr(end)};
}

inline GlossToken make_punct_token(std::string_view punct, bool glued) {
  return GlossToken{{GlossMorph{MorphKind::Punct, std::string(punct), Joiner::WordInitial, false}}, glued};
}

/// Tokenizes a gloss line. Each whitespace token becomes a GlossToken split
/// at '-', '.', '='; trailing sentence punctuation becomes its own (glued)
/// token. Label classification consults `table`.
inline GlossLine tokenize_gloss(std::string_view line, const NormalizationTable& table,
                                LemmaSide side = LemmaSide::Source) {
  const auto words = text::split_ws(line);
  if (words.empty()) throw Error(ErrorCode::EmptyLine, "gloss line is empty");
  GlossLine out;
  out.lemma_side = side;
  for (auto word : words) {
    auto [body, punct] = split_trailing_punct(word);
    if (body.empty()) {
      out.tokens.push_back(make_punct_token(word, false));
      continue;
    }
    out.tokens.push_back(GlossToken{detail::split_morphs(body, table), false});
    if (!punct.empty()) out.tokens.push_back(make_punct_token(punct, true));
  }
  return out;
}

inline GlossLine tokenize_gloss(std::string_view line, LemmaSide side = LemmaSide::Source) {
  return tokenize_gloss(line, default_table(), side);
}

}  // namespace igt
