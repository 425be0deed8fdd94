#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"

namespace igt {

/// Three-letter lowercase language code such as "blu", "tur" or "arp".
class LanguageTag {
 public:
  LanguageTag() = default;

  explicit LanguageTag(std::string_view code) : code_(code) {
    if (!is_valid(code))
      throw Error(ErrorCode::BadLanguageTag, "'" + std::string(code) + "' is not a 3-letter [a-z] code");
  }

  static bool is_valid(std::string_view code) {
    if (code.size() != 3) return false;
    for (char c : code)
      if (c < 'a' || c > 'z') return false;
    return true;
  }

  const std::string& code() const noexcept { return code_; }
  bool empty() const noexcept { return code_.empty(); }

  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;

 private:
  std::string code_;
};

enum class MorphKind { Lemma, Label, Punct };

/// How a morph attaches to the one before it.
enum class Joiner { WordInitial, Hyphen, Period, Equals };

inline constexpr std::string_view joiner_text(Joiner j) {
  switch (j) {
    case Joiner::WordInitial: return "";
    case Joiner::Hyphen: return "-";
    case Joiner::Period: return ".";
    case Joiner::Equals: return "=";
  }
  return "";
}

inline constexpr bool is_joiner_char(char c) { return c == '-' || c == '.' || c == '='; }

inline constexpr Joiner joiner_for(char c) {
  return c == '-' ? Joiner::Hyphen : c == '.' ? Joiner::Period : Joiner::Equals;
}

/// One lemma or label inside a glossed word. `opaque` marks a lemma that the
/// tokenizer kept whole because splitting would lose characters.
struct GlossMorph {
  MorphKind kind = MorphKind::Lemma;
  std::string text;
  Joiner joiner = Joiner::WordInitial;
  bool opaque = false;

  friend bool operator==(const GlossMorph&, const GlossMorph&) = default;
};

/// A glossed word. `glued` tokens (trailing punctuation) render with no
/// space before them, so "3SG." keeps its shape.
struct GlossToken {
  std::vector<GlossMorph> morphs;
  bool glued = false;

  bool is_punct() const { return morphs.size() == 1 && morphs.front().kind == MorphKind::Punct; }

  std::string render() const {
    std::string out;
    for (const auto& m : morphs) {
      out += joiner_text(m.joiner);
      out += m.text;
    }
    return out;
  }

  friend bool operator==(const GlossToken&, const GlossToken&) = default;
};

enum class LemmaSide { Source, Target };

struct GlossLine {
  std::vector<GlossToken> tokens;
  LemmaSide lemma_side = LemmaSide::Source;

  /// Faithful rendering: glued punctuation is re-attached.
  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i != 0 && !tokens[i].glued) out += ' ';
      out += tokens[i].render();
    }
    return out;
  }

  /// Rendering fed to translation models: every token is whitespace
  /// separated; with `split_morphs` each morph becomes its own token with
  /// its joiner prefixed ("do -AOR .3 .SG").
  std::string render_spaced(bool split_morphs = false) const {
    std::string out;
    auto emit = [&out](std::string_view piece) {
      if (!out.empty()) out += ' ';
      out += piece;
    };
    for (const auto& tok : tokens) {
      if (!split_morphs || tok.morphs.size() == 1) {
        emit(tok.render());
        continue;
      }
      for (const auto& m : tok.morphs) emit(std::string(joiner_text(m.joiner)) + m.text);
    }
    return out;
  }

  friend bool operator==(const GlossLine&, const GlossLine&) = default;
};

/// One interlinear example: source text (1), gloss with source lemmas (2),
/// gloss with target lemmas (3), and free translation (4).
struct IgtRecord {
  std::string id;
  LanguageTag lang;
  std::optional<std::string> source_text;
  std::optional<GlossLine> gloss_src;
  std::optional<GlossLine> gloss_tgt;
  std::optional<std::string> target_text;
  std::string provenance;

  bool has_content() const {
    return source_text || gloss_src || gloss_tgt || target_text;
  }

  friend bool operator==(const IgtRecord&, const IgtRecord&) = default;
};

/// Throws if `r` breaks a record invariant; `count_code` is the code used
/// for a gloss token-count mismatch.
inline void check_record(const IgtRecord& r, ErrorCode count_code = ErrorCode::MalformedRecord) {
  if (!r.has_content())
    throw Error(ErrorCode::MalformedRecord,
                "record '" + r.id + "' has none of src, gloss_src, gloss_tgt, tgt");
  if (r.gloss_src && r.gloss_tgt && r.gloss_src->tokens.size() != r.gloss_tgt->tokens.size())
    throw Error(count_code, "record '" + r.id +
                                "': gloss lines must have equal token counts (gloss_src " +
                                std::to_string(r.gloss_src->tokens.size()) + ", gloss_tgt " +
                                std::to_string(r.gloss_tgt->tokens.size()) + ")");
}

struct CorpusSplit {
  std::vector<IgtRecord> train;
  std::vector<IgtRecord> validation;
  std::vector<IgtRecord> test;
};

}  // namespace igt
