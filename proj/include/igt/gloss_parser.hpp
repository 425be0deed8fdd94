#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"
#include "igt/gloss_tokenizer.hpp"
#include "igt/igt_model.hpp"
#include "igt/normalization_table.hpp"
#include "igt/text.hpp"

namespace igt {

// ---------------------------------------------------------------------------
// ODIN-style blocks
// ---------------------------------------------------------------------------

/// A run of 2-4 non-blank lines: [source,] [gloss_src,] gloss, translation.
struct RawIgtBlock {
  std::vector<std::string> lines;
  std::size_t first_line = 0;  // 1-based line number of lines[0]
  std::optional<std::string> source_language_hint;
};

struct OdinParseResult {
  std::vector<RawIgtBlock> blocks;
  Warnings warnings;
};

/// Splits text into blocks of non-blank lines. Runs outside 2..4 lines are
/// reported as BLOCK_SHAPE warnings; every input line lands in exactly one
/// block or one warning.
inline OdinParseResult parse_odin_blocks(std::string_view input) {
  OdinParseResult result;
  const auto lines = text::split_lines(text::strip_bom(input));
  std::size_t i = 0;
  while (i < lines.size()) {
    if (text::trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    RawIgtBlock block;
    block.first_line = i + 1;
    while (i < lines.size() && !text::trim(lines[i]).empty()) block.lines.emplace_back(text::trim(lines[i++]));
    const std::size_t n = block.lines.size();
    if (n < 2 || n > 4) {
      result.warnings.push_back({ErrorCode::BlockShape, block.first_line,
                                 std::to_string(n) + "-line run (lines " + std::to_string(block.first_line) +
                                     "-" + std::to_string(block.first_line + n - 1) + ") skipped; expected 2-4"});
      continue;
    }
    result.blocks.push_back(std::move(block));
  }
  return result;
}

/// Maps a 3-line (source, gloss, translation) or 4-line (source, gloss with
/// source lemmas, gloss with target lemmas, translation) block to a record.
inline IgtRecord block_to_record(const RawIgtBlock& block, const LanguageTag& lang, std::string id,
                                 const NormalizationTable& table = default_table()) {
  const auto n = block.lines.size();
  if (n != 3 && n != 4)
    throw Error(ErrorCode::BlockShape, "block at line " + std::to_string(block.first_line) + " has " +
                                           std::to_string(n) + " lines; expected 3 or 4");
  IgtRecord r;
  r.id = std::move(id);
  r.lang = lang;
  r.source_text = block.lines.front();
  r.target_text = block.lines.back();
  if (n == 4) r.gloss_src = tokenize_gloss(block.lines[1], table, LemmaSide::Source);
  r.gloss_tgt = tokenize_gloss(block.lines[n - 2], table, LemmaSide::Target);
  r.provenance = "odin:" + std::to_string(block.first_line);
  check_record(r, ErrorCode::TokenCountMismatch);
  return r;
}

// ---------------------------------------------------------------------------
// ToolBox
// ---------------------------------------------------------------------------

enum class ToolboxRole { Source, GlossSrc, GlossTgt, Target, Ignore };

/// Marker (with its backslash, e.g. "\\g") to IGT line role.
using ToolboxFieldMap = std::map<std::string, ToolboxRole>;

inline ToolboxFieldMap default_toolbox_map() {
  return {{"\\t", ToolboxRole::Source},
          {"\\m", ToolboxRole::Ignore},
          {"\\g", ToolboxRole::GlossTgt},
          {"\\f", ToolboxRole::Target}};
}

inline std::optional<ToolboxRole> parse_toolbox_role(std::string_view s) {
  if (s == "source") return ToolboxRole::Source;
  if (s == "gloss_src") return ToolboxRole::GlossSrc;
  if (s == "gloss_tgt") return ToolboxRole::GlossTgt;
  if (s == "target") return ToolboxRole::Target;
  if (s == "ignore") return ToolboxRole::Ignore;
  return std::nullopt;
}

struct ToolboxParseResult {
  std::vector<IgtRecord> records;
  Warnings warnings;
};

/// Parses backslash-coded ToolBox text. A record starts at every recurrence
/// of the first mapped marker; lines without a leading backslash continue
/// the previous field and are joined with a single space.
inline ToolboxParseResult parse_toolbox(std::string_view input, const ToolboxFieldMap& field_map,
                                        const LanguageTag& lang, std::string_view id_prefix = "tbx",
                                        const NormalizationTable& table = default_table()) {
  ToolboxParseResult result;
  std::optional<std::string> start_marker;

  struct Pending {
    std::size_t line = 0;
    std::map<ToolboxRole, std::string> fields;
  };
  std::optional<Pending> current;
  std::optional<ToolboxRole> active;  // role receiving continuation lines
  std::size_t emitted = 0;

  auto append = [](std::string& field, std::string_view content) {
    if (content.empty()) return;
    if (!field.empty()) field += ' ';
    field += content;
  };

  auto flush = [&] {
    if (!current) return;
    Pending p = std::move(*current);
    current.reset();
    bool empty = true;
    for (const auto& [role, value] : p.fields) empty = empty && value.empty();
    if (empty) {
      result.warnings.push_back({ErrorCode::EmptyRecord, p.line, "record has no content; skipped"});
      return;
    }
    IgtRecord r;
    r.id = std::string(id_prefix) + "-" + std::to_string(emitted + 1);
    r.lang = lang;
    r.provenance = "toolbox:" + std::to_string(p.line);
    try {
      for (const auto& [role, value] : p.fields) {
        if (value.empty()) continue;
        switch (role) {
          case ToolboxRole::Source: r.source_text = value; break;
          case ToolboxRole::Target: r.target_text = value; break;
          case ToolboxRole::GlossSrc: r.gloss_src = tokenize_gloss(value, table, LemmaSide::Source); break;
          case ToolboxRole::GlossTgt: r.gloss_tgt = tokenize_gloss(value, table, LemmaSide::Target); break;
          case ToolboxRole::Ignore: break;
        }
      }
      check_record(r, ErrorCode::TokenCountMismatch);
    } catch (const Error& e) {
      result.warnings.push_back({e.code(), p.line, e.message() + "; record skipped"});
      return;
    }
    ++emitted;
    result.records.push_back(std::move(r));
  };

  const auto lines = text::split_lines(text::strip_bom(input));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = text::trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() != '\\') {
      if (active && current) append(current->fields[*active], line);
      else if (!current)
        result.warnings.push_back({ErrorCode::UnknownMarker, lineno, "text outside any record ignored"});
      continue;
    }
    std::size_t cut = 0;
    while (cut < line.size() && !text::is_space(line[cut])) ++cut;
    const std::string marker(line.substr(0, cut));
    const auto content = text::trim(line.substr(cut));
    auto it = field_map.find(marker);
    if (it == field_map.end()) {
      result.warnings.push_back({ErrorCode::UnknownMarker, lineno, "marker " + marker + " ignored"});
      active.reset();
      continue;
    }
    if (!start_marker) start_marker = marker;
    if (marker == *start_marker) {
      flush();
      current = Pending{lineno, {}};
    }
    if (!current) {
      result.warnings.push_back({ErrorCode::UnknownMarker, lineno, "marker " + marker + " before first record"});
      active.reset();
      continue;
    }
    if (it->second == ToolboxRole::Ignore) {
      active.reset();
      continue;
    }
    active = it->second;
    append(current->fields[it->second], content);
  }
  flush();
  return result;
}

// ---------------------------------------------------------------------------
// Morphological analyzer output ("Kadi+A3sg+Pnon+Nom")
// ---------------------------------------------------------------------------

struct AnalyzerToken {
  std::string surface;
  std::vector<std::string> tags;
  bool glued = false;  // punctuation split off the previous token

  std::string render() const {
    std::string out = surface;
    for (const auto& t : tags) out += "+" + t;
    return out;
  }

  friend bool operator==(const AnalyzerToken&, const AnalyzerToken&) = default;
};

inline std::vector<AnalyzerToken> parse_analyzer_line(std::string_view line) {
  std::vector<AnalyzerToken> out;
  const auto words = text::split_ws(line);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto word = words[w];
    auto [body, punct] = split_trailing_punct(word);
    if (body.empty()) {
      out.push_back({std::string(word), {}, false});
      continue;
    }
    auto pieces = text::split(body, '+');
    if (pieces.front().empty())
      throw Error(ErrorCode::MalformedToken,
                  "token " + std::to_string(w + 1) + " '" + std::string(word) + "' has an empty surface");
    AnalyzerToken tok{pieces.front(), {}, false};
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i].empty())
        throw Error(ErrorCode::MalformedToken,
                    "token " + std::to_string(w + 1) + " '" + std::string(word) + "' has an empty tag");
      tok.tags.push_back(std::move(pieces[i]));
    }
    out.push_back(std::move(tok));
    if (!punct.empty()) out.push_back({std::string(punct), {}, true});
  }
  return out;
}

inline std::string render_analyzer_line(const std::vector<AnalyzerToken>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != 0 && !tokens[i].glued) out += ' ';
    out += tokens[i].render();
  }
  return out;
}

}  // namespace igt
