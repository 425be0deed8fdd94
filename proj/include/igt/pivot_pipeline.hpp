#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igt/aligner.hpp"
#include "igt/error.hpp"
#include "igt/gloss_parser.hpp"
#include "igt/gloss_tokenizer.hpp"
#include "igt/igt_model.hpp"
#include "igt/normalizer.hpp"
#include "igt/subprocess.hpp"
#include "igt/text.hpp"

namespace igt {

enum class OovPolicy { Keep, KeepMarked, Drop };

inline constexpr std::string_view oov_open = "⟦";
inline constexpr std::string_view oov_close = "⟧";

struct SubstitutionStats {
  std::size_t lemmas = 0;
  std::size_t oov = 0;
  std::vector<std::string> oov_lemmas;
};

/// Stage 2->3: replaces every lemma by its dictionary translation, keeping
/// labels and token boundaries. A title-case source lemma yields a
/// title-case target. Under Drop, OOV lemmas disappear (and so does a token
/// left with no morphs).
inline GlossLine substitute_lemmas(const GlossLine& gloss, const LemmaDictionary& dict, OovPolicy policy,
                                   SubstitutionStats* stats = nullptr) {
  GlossLine out;
  out.lemma_side = LemmaSide::Target;
  for (const auto& tok : gloss.tokens) {
    GlossToken nt{{}, tok.glued};
    for (const auto& m : tok.morphs) {
      if (m.kind != MorphKind::Lemma) {
        nt.morphs.push_back(m);
        continue;
      }
      if (stats) ++stats->lemmas;
      if (const auto* hit = dict.lookup(m.text)) {
        GlossMorph sub = m;
        sub.text = text::starts_upper(m.text) ? text::capitalize_first(hit->target) : hit->target;
        sub.opaque = std::any_of(sub.text.begin(), sub.text.end(), is_joiner_char);
        nt.morphs.push_back(std::move(sub));
        continue;
      }
      if (stats) {
        ++stats->oov;
        stats->oov_lemmas.push_back(m.text);
      }
      switch (policy) {
        case OovPolicy::Keep:
          nt.morphs.push_back(m);
          break;
        case OovPolicy::KeepMarked: {
          GlossMorph marked = m;
          marked.text = std::string(oov_open) + m.text + std::string(oov_close);
          nt.morphs.push_back(std::move(marked));
          break;
        }
        case OovPolicy::Drop:
          break;
      }
    }
    if (nt.morphs.empty()) continue;
    nt.morphs.front().joiner = Joiner::WordInitial;
    out.tokens.push_back(std::move(nt));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct MultilingualPairs {
  std::vector<std::pair<std::string, std::string>> pairs;  // (tagged gloss, target)
  Warnings warnings;
};

/// Gloss-to-target training pairs: the source line is the language tag
/// followed by the spaced gloss with target lemmas ("blu 3SG always praise 3SG .").
inline MultilingualPairs prepare_multilingual(const std::vector<IgtRecord>& records, bool split_morphs = false) {
  MultilingualPairs out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::string missing;
    if (!r.gloss_tgt) missing += " gloss_tgt";
    if (!r.target_text) missing += " tgt";
    if (r.lang.empty()) missing += " lang";
    if (!missing.empty()) {
      out.warnings.push_back({ErrorCode::SkippedRecord, i + 1, "record '" + r.id + "' lacks" + missing});
      continue;
    }
    out.pairs.emplace_back(r.lang.code() + " " + r.gloss_tgt->render_spaced(split_morphs), *r.target_text);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct TranslatorHandle {
  enum class Kind { External, BaselineDetokenize, Identity };

  Kind kind = Kind::BaselineDetokenize;
  std::string command;  // External only
  double timeout_seconds = 300.0;

  static TranslatorHandle baseline() { return {Kind::BaselineDetokenize, {}, 300.0}; }
  static TranslatorHandle identity() { return {Kind::Identity, {}, 300.0}; }
  static TranslatorHandle external(std::string command, double timeout_seconds = 300.0) {
    if (text::trim(command).empty())
      throw Error(ErrorCode::TranslatorSpawnFailure, "external translator needs a non-empty command");
    return {Kind::External, std::move(command), timeout_seconds};
  }

  /// "baseline", "identity" or "cmd:<shell command>".
  static TranslatorHandle parse(std::string_view spec, double timeout_seconds = 300.0) {
    if (spec == "baseline") return baseline();
    if (spec == "identity") return identity();
    if (spec.substr(0, 4) == "cmd:") return external(std::string(spec.substr(4)), timeout_seconds);
    throw Error(ErrorCode::TranslatorSpawnFailure,
                "unknown translator '" + std::string(spec) + "' (expected baseline, identity or cmd:...)");
  }
};

/// Label-stripping detokenizer: keeps lemmas (underscores become spaces) and
/// punctuation, drops labels, capitalizes the first character. Accepts both
/// plain and split-morph renderings.
inline std::string baseline_detokenize(std::string_view gloss, const NormalizationTable& table = default_table()) {
  std::vector<std::string> words;
  auto push_lemma = [&words](std::string s) {
    for (char& c : s)
      if (c == '_') c = ' ';
    if (!s.empty()) words.push_back(std::move(s));
  };
  for (auto w : text::split_ws(gloss)) {
    if (text::is_all_punct(w)) {
      words.emplace_back(w);
      continue;
    }
    if (w.size() > 1 && is_joiner_char(w.front())) {  // "-AOR" from a split-morph rendering
      auto [body, punct] = split_trailing_punct(w.substr(1));
      if (!body.empty() && !detail::inner_is_label(body, table)) push_lemma(std::string(body));
      if (!punct.empty()) words.emplace_back(punct);
      continue;
    }
    for (const auto& tok : tokenize_gloss(w, table).tokens) {
      if (tok.is_punct()) {
        words.push_back(tok.morphs.front().text);
        continue;
      }
      for (const auto& m : tok.morphs)
        if (m.kind == MorphKind::Lemma) push_lemma(m.text);
    }
  }
  return text::capitalize_first(text::join(words, " "));
}

/// Stage 3->4 through the chosen translator. External translators speak the
/// line protocol and must return exactly one line per input line; any
/// failure aborts the whole batch.
inline std::vector<std::string> translate(const std::vector<std::string>& lines, const TranslatorHandle& translator) {
  switch (translator.kind) {
    case TranslatorHandle::Kind::Identity:
      return lines;
    case TranslatorHandle::Kind::BaselineDetokenize: {
      std::vector<std::string> out;
      out.reserve(lines.size());
      for (const auto& l : lines) out.push_back(baseline_detokenize(l));
      return out;
    }
    case TranslatorHandle::Kind::External: {
      if (lines.empty()) return {};
      auto out = run_line_filter(translator.command, lines, translator.timeout_seconds);
      if (out.size() != lines.size())
        throw Error(ErrorCode::TranslatorCountMismatch, "sent " + std::to_string(lines.size()) + " lines, received " +
                                                            std::to_string(out.size()));
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

struct SentenceAudit {
  std::string analyzer;        // 1: analyzer output as read
  std::string gloss_src;       // 2: gloss with source lemmas
  std::string gloss_tgt;       // 3: gloss with target lemmas
  std::string translator_input;
  std::string translation;     // 4
  std::size_t analyzer_tokens = 0;
  std::size_t gloss_src_tokens = 0;
  std::size_t gloss_tgt_tokens = 0;
};

struct PipelineReport {
  std::size_t sentences = 0;
  std::size_t analyzer_tokens = 0;
  std::size_t gloss_src_tokens = 0;
  std::size_t gloss_tgt_tokens = 0;
  std::size_t lemmas = 0;
  std::size_t oov_lemmas = 0;
  std::size_t unknown_labels = 0;
  std::size_t unknown_analyzer_tags = 0;
  std::vector<std::string> oov;
  std::vector<std::string> unknown;
  std::vector<SentenceAudit> audit;

  /// Token counts agree across stages 1, 2 and 3.
  bool tokens_conserved() const {
    return analyzer_tokens == gloss_src_tokens && gloss_src_tokens == gloss_tgt_tokens;
  }
};

struct PipelineOptions {
  OovPolicy oov = OovPolicy::Keep;
  bool split_morphs = false;
  bool retain_audit = true;
};

struct PipelineResult {
  std::vector<std::string> translations;
  PipelineReport report;
};

/// Runs 1->2->3->4 over analyzer output, one sentence per non-blank line.
/// Errors are re-raised with the failing stage and sentence attached.
inline PipelineResult run_pipeline(std::string_view analyzer_text, const NormalizationTable& table,
                                   const LemmaDictionary& dict, const TranslatorHandle& translator,
                                   const PipelineOptions& options = {}) {
  PipelineResult result;
  auto& report = result.report;
  std::vector<std::string> translator_input;
  std::vector<SentenceAudit> audit;

  auto stage_error = [](const Error& e, std::string_view stage, std::size_t line) {
    std::string where = "stage " + std::string(stage);
    if (line) where += " (line " + std::to_string(line) + ")";
    return Error(e.code(), where + ": " + e.message());
  };

  const auto lines = text::split_lines(text::strip_bom(analyzer_text));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    SentenceAudit sa;
    sa.analyzer = std::string(text::trim(lines[i]));

    std::vector<AnalyzerToken> tokens;
    try {
      tokens = parse_analyzer_line(lines[i]);
    } catch (const Error& e) {
      throw stage_error(e, "parse-analyzer", i + 1);
    }
    NormalizationStats nstats;
    const auto gloss_src = analyzer_to_gloss(tokens, table, &nstats);
    SubstitutionStats sstats;
    const auto gloss_tgt = substitute_lemmas(gloss_src, dict, options.oov, &sstats);

    sa.analyzer_tokens = tokens.size();
    sa.gloss_src_tokens = gloss_src.tokens.size();
    sa.gloss_tgt_tokens = gloss_tgt.tokens.size();
    sa.gloss_src = gloss_src.render();
    sa.gloss_tgt = gloss_tgt.render();
    sa.translator_input = gloss_tgt.render_spaced(options.split_morphs);

    ++report.sentences;
    report.analyzer_tokens += sa.analyzer_tokens;
    report.gloss_src_tokens += sa.gloss_src_tokens;
    report.gloss_tgt_tokens += sa.gloss_tgt_tokens;
    report.lemmas += sstats.lemmas;
    report.oov_lemmas += sstats.oov;
    report.unknown_labels += nstats.unknown_labels;
    report.unknown_analyzer_tags += nstats.unknown_analyzer_tags;
    report.oov.insert(report.oov.end(), sstats.oov_lemmas.begin(), sstats.oov_lemmas.end());
    report.unknown.insert(report.unknown.end(), nstats.unknown.begin(), nstats.unknown.end());

    translator_input.push_back(sa.translator_input);
    audit.push_back(std::move(sa));
  }

  try {
    result.translations = translate(translator_input, translator);
  } catch (const Error& e) {
    throw stage_error(e, "translate", 0);
  }
  if (options.retain_audit) {
    for (std::size_t i = 0; i < audit.size(); ++i) audit[i].translation = result.translations[i];
    report.audit = std::move(audit);
  }
  return result;
}

}  // namespace igt
