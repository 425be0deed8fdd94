#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "igt/gloss_parser.hpp"
#include "igt/igt_model.hpp"
#include "igt/normalization_table.hpp"
#include "igt/text.hpp"

namespace igt {

struct LabelResult {
  std::vector<std::string> labels;
  bool known = true;  // false: passed through unchanged (UNKNOWN)
};

/// Counters filled by the normalization operations; UNKNOWN labels and
/// analyzer tags are reported here rather than raised.
struct NormalizationStats {
  std::size_t labels_seen = 0;
  std::size_t unknown_labels = 0;
  std::size_t unknown_analyzer_tags = 0;
  std::vector<std::string> unknown;  // raw strings, in encounter order

  void merge(const NormalizationStats& other) {
    labels_seen += other.labels_seen;
    unknown_labels += other.unknown_labels;
    unknown_analyzer_tags += other.unknown_analyzer_tags;
    unknown.insert(unknown.end(), other.unknown.begin(), other.unknown.end());
  }
};

inline LabelResult normalize_label(std::string_view raw, const NormalizationTable& table) {
  if (const auto* hit = table.find_variant(raw)) return {*hit, true};
  if (auto composite = table.match_composite(raw)) return {std::move(*composite), true};
  if (auto upper = text::ascii_upper(raw); table.in_registry(upper)) return {{std::move(upper)}, true};
  // Abbreviation period ("Progr.")
  if (raw.size() > 1 && raw.back() == '.') {
    auto stripped = normalize_label(raw.substr(0, raw.size() - 1), table);
    if (stripped.known) return stripped;
  }
  return {{std::string(raw)}, false};
}

/// Replaces every LABEL morph by its canonical sequence. The first
/// replacement keeps the original joiner, the rest join with '.'.
inline GlossLine normalize_gloss_line(const GlossLine& line, const NormalizationTable& table,
                                      NormalizationStats* stats = nullptr) {
  GlossLine out;
  out.lemma_side = line.lemma_side;
  out.tokens.reserve(line.tokens.size());
  for (const auto& tok : line.tokens) {
    GlossToken nt{{}, tok.glued};
    for (const auto& m : tok.morphs) {
      if (m.kind != MorphKind::Label) {
        nt.morphs.push_back(m);
        continue;
      }
      auto res = normalize_label(m.text, table);
      if (stats) {
        ++stats->labels_seen;
        if (!res.known) {
          ++stats->unknown_labels;
          stats->unknown.push_back(m.text);
        }
      }
      for (std::size_t i = 0; i < res.labels.size(); ++i)
        nt.morphs.push_back({MorphKind::Label, std::move(res.labels[i]), i == 0 ? m.joiner : Joiner::Period, false});
    }
    out.tokens.push_back(std::move(nt));
  }
  return out;
}

/// Stage 1->2: turns analyzer tokens into a gloss with source lemmas.
/// Roots are restored through the table's [roots] lexicon; repeated labels
/// within one word are emitted once (A3sg+P3sg -> 3.SG.POSS).
inline GlossLine analyzer_to_gloss(const std::vector<AnalyzerToken>& tokens, const NormalizationTable& table,
                                   NormalizationStats* stats = nullptr) {
  GlossLine out;
  out.lemma_side = LemmaSide::Source;
  for (const auto& at : tokens) {
    if (text::is_all_punct(at.surface)) {
      out.tokens.push_back(make_punct_token(at.surface, at.glued));
      continue;
    }
    GlossToken tok;
    tok.glued = at.glued;
    const auto lemma = table.restore_root(at.surface);
    const bool opaque = std::any_of(lemma.begin(), lemma.end(), is_joiner_char);
    tok.morphs.push_back({MorphKind::Lemma, lemma, Joiner::WordInitial, opaque});

    std::vector<std::string> emitted;
    auto add = [&](std::string label, Joiner joiner) {
      if (std::find(emitted.begin(), emitted.end(), label) != emitted.end()) return;
      emitted.push_back(label);
      tok.morphs.push_back({MorphKind::Label, std::move(label), joiner, false});
    };
    for (const auto& tag : at.tags) {
      if (stats) ++stats->labels_seen;
      const auto* entry = table.find_analyzer(tag);
      if (!entry) {
        if (stats) {
          ++stats->unknown_analyzer_tags;
          stats->unknown.push_back(tag);
        }
        add(tag, Joiner::Period);
        continue;
      }
      for (std::size_t k = 0; k < entry->labels.size(); ++k)
        add(entry->labels[k], entry->verbal && k == 0 ? Joiner::Hyphen : Joiner::Period);
    }
    out.tokens.push_back(std::move(tok));
  }
  return out;
}

}  // namespace igt
