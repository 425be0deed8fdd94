#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "igt/error.hpp"
#include "igt/text.hpp"

// IBM Model 1 lexical translation trained by EM. The model generates each
// source word from one target word (or NULL): t(f|e), normalized so that
// sum_f t(f|e) = 1 for every target word e. The lemma dictionary takes, for
// each source word f, the target e maximizing t(f|e).
namespace igt {

inline constexpr std::string_view null_word = "<NULL>";

struct SentencePair {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;

  /// Builds a corpus from two aligned texts, one whitespace-tokenized
  /// sentence per line.
  static ParallelCorpus from_lines(std::string_view source_text, std::string_view target_text) {
    const auto src = text::split_lines(text::strip_bom(source_text));
    const auto tgt = text::split_lines(text::strip_bom(target_text));
    if (src.size() != tgt.size())
      throw Error(ErrorCode::LengthMismatch, "source has " + std::to_string(src.size()) + " lines, target has " +
                                                 std::to_string(tgt.size()));
    ParallelCorpus c;
    for (std::size_t i = 0; i < src.size(); ++i) {
      SentencePair p{text::split_ws_copy(src[i]), text::split_ws_copy(tgt[i])};
      if (p.source.empty() || p.target.empty())
        throw Error(ErrorCode::EmptyCorpus, "empty sentence on line " + std::to_string(i + 1));
      c.pairs.push_back(std::move(p));
    }
    return c;
  }
};

class TranslationTable {
 public:
  using Row = std::map<std::string, double>;  // target -> t(source|target)

  /// t(source | target); 0 for pairs that never co-occurred.
  double prob(std::string_view source, std::string_view target) const {
    auto it = by_source_.find(std::string(source));
    if (it == by_source_.end()) return 0.0;
    auto jt = it->second.find(std::string(target));
    return jt == it->second.end() ? 0.0 : jt->second;
  }

  const std::map<std::string, Row>& rows() const { return by_source_; }
  const std::vector<std::string>& source_vocab() const { return source_vocab_; }
  const std::vector<std::string>& target_vocab() const { return target_vocab_; }
  bool has_null() const { return null_word_; }
  std::size_t iterations_run() const { return iterations_run_; }
  /// Perplexity under the parameters after k iterations, k = 0..iterations_run.
  const std::vector<double>& perplexity_log() const { return perplexity_log_; }
  double final_perplexity() const { return perplexity_log_.empty() ? 0.0 : perplexity_log_.back(); }

  /// `source<TAB>target<TAB>t(source|target)` sorted by source then target.
  void write(std::ostream& out) const {
    char buf[64];
    for (const auto& [f, row] : by_source_)
      for (const auto& [e, p] : row) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out << f << '\t' << e << '\t' << buf << '\n';
      }
  }

  static TranslationTable read(std::istream& in) {
    TranslationTable t;
    std::string line;
    std::size_t lineno = 0;
    std::map<std::string, bool> src_seen, tgt_seen;
    while (std::getline(in, line)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      auto fields = text::split(line, '\t');
      if (fields.size() != 3)
        throw Error(ErrorCode::Io, "translation table line " + std::to_string(lineno) + ": expected 3 fields");
      double p = 0;
      try {
        p = std::stod(fields[2]);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Io, "translation table line " + std::to_string(lineno) + ": bad probability");
      }
      t.by_source_[fields[0]][fields[1]] = p;
      if (!src_seen[fields[0]]) t.source_vocab_.push_back(fields[0]);
      if (!tgt_seen[fields[1]]) t.target_vocab_.push_back(fields[1]);
      src_seen[fields[0]] = tgt_seen[fields[1]] = true;
      if (fields[1] == null_word) t.null_word_ = true;
    }
    return t;
  }

 private:
  friend TranslationTable train_model1(const ParallelCorpus&, std::size_t, bool);

  std::map<std::string, Row> by_source_;
  std::vector<std::string> source_vocab_;
  std::vector<std::string> target_vocab_;
  bool null_word_ = false;
  std::size_t iterations_run_ = 0;
  std::vector<double> perplexity_log_;
};

/// Trains IBM Model 1. Tokens are lowercased first. Initialization is
/// uniform over the source words co-occurring with each target word. With
/// `use_null`, a NULL token is prepended to every target sentence.
inline TranslationTable train_model1(const ParallelCorpus& corpus, std::size_t iterations, bool use_null) {
  if (corpus.pairs.empty()) throw Error(ErrorCode::EmptyCorpus, "parallel corpus has no sentence pairs");
  if (iterations == 0) throw Error(ErrorCode::EmptyCorpus, "iterations must be >= 1");

  std::unordered_map<std::string, std::uint32_t> src_ids, tgt_ids;
  std::vector<std::string> src_words, tgt_words;
  auto intern = [](auto& ids, auto& words, std::string w) {
    auto [it, fresh] = ids.try_emplace(w, static_cast<std::uint32_t>(words.size()));
    if (fresh) words.push_back(std::move(w));
    return it->second;
  };
  if (use_null) intern(tgt_ids, tgt_words, std::string(null_word));

  // Per pair: source ids, target ids (NULL first when enabled), and the
  // parameter index of every (source position, target position) cell.
  struct Encoded {
    std::uint32_t n_src = 0, n_tgt = 0;
    std::vector<std::uint32_t> cells;  // row-major [source][target]
  };
  std::vector<Encoded> encoded;
  encoded.reserve(corpus.pairs.size());
  std::unordered_map<std::uint64_t, std::uint32_t> param_ids;
  std::vector<std::uint32_t> param_src, param_tgt;
  std::size_t source_tokens = 0;

  for (const auto& pair : corpus.pairs) {
    if (pair.source.empty() || pair.target.empty())
      throw Error(ErrorCode::EmptyCorpus, "sentence pair with an empty side");
    std::vector<std::uint32_t> f, e;
    for (const auto& w : pair.source) f.push_back(intern(src_ids, src_words, text::to_lower(w)));
    if (use_null) e.push_back(0);
    for (const auto& w : pair.target) e.push_back(intern(tgt_ids, tgt_words, text::to_lower(w)));
    Encoded enc{static_cast<std::uint32_t>(f.size()), static_cast<std::uint32_t>(e.size()), {}};
    enc.cells.reserve(f.size() * e.size());
    for (auto fj : f)
      for (auto ei : e) {
        const std::uint64_t key = (std::uint64_t(fj) << 32) | ei;
        auto [it, fresh] = param_ids.try_emplace(key, static_cast<std::uint32_t>(param_src.size()));
        if (fresh) {
          param_src.push_back(fj);
          param_tgt.push_back(ei);
        }
        enc.cells.push_back(it->second);
      }
    source_tokens += f.size();
    encoded.push_back(std::move(enc));
  }

  const std::size_t n_params = param_src.size();
  std::vector<double> t(n_params), counts(n_params), totals(tgt_words.size());
  {
    std::vector<std::size_t> cooc(tgt_words.size(), 0);
    for (auto e : param_tgt) ++cooc[e];
    for (std::size_t k = 0; k < n_params; ++k) t[k] = 1.0 / static_cast<double>(cooc[param_tgt[k]]);
  }

  // One pass over the corpus: returns the log-likelihood under `t` and, when
  // `accumulate`, adds expected counts. Fixed pair order keeps it bit-stable.
  auto e_step = [&](bool accumulate) {
    double ll = 0.0;
    for (const auto& enc : encoded) {
      const double inv_len = 1.0 / enc.n_tgt;
      for (std::uint32_t j = 0; j < enc.n_src; ++j) {
        const std::uint32_t* row = enc.cells.data() + std::size_t(j) * enc.n_tgt;
        double denom = 0.0;
        for (std::uint32_t i = 0; i < enc.n_tgt; ++i) denom += t[row[i]];
        ll += std::log(denom * inv_len);
        if (accumulate)
          for (std::uint32_t i = 0; i < enc.n_tgt; ++i) counts[row[i]] += t[row[i]] / denom;
      }
    }
    return ll;
  };
  auto perplexity = [&](double ll) { return std::exp(-ll / static_cast<double>(source_tokens)); };

  TranslationTable table;
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(totals.begin(), totals.end(), 0.0);
    table.perplexity_log_.push_back(perplexity(e_step(true)));
    for (std::size_t k = 0; k < n_params; ++k) totals[param_tgt[k]] += counts[k];
    for (std::size_t k = 0; k < n_params; ++k) t[k] = counts[k] / totals[param_tgt[k]];
  }
  table.perplexity_log_.push_back(perplexity(e_step(false)));

  table.iterations_run_ = iterations;
  table.null_word_ = use_null;
  table.source_vocab_ = src_words;
  table.target_vocab_ = tgt_words;
  for (std::size_t k = 0; k < n_params; ++k) table.by_source_[src_words[param_src[k]]][tgt_words[param_tgt[k]]] = t[k];
  return table;
}

// ---------------------------------------------------------------------------

struct DictionaryEntry {
  std::string target;
  double probability = 0.0;

  friend bool operator==(const DictionaryEntry&, const DictionaryEntry&) = default;
};

/// Source lemma (lowercase) -> best target lemma.
class LemmaDictionary {
 public:
  LemmaDictionary() = default;
  explicit LemmaDictionary(double threshold) : threshold_(threshold) {}

  double threshold() const { return threshold_; }
  const std::map<std::string, DictionaryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Keeps the higher-probability target; ties go to the lexicographically
  /// smaller target.
  void insert(const std::string& source, DictionaryEntry entry) {
    auto key = text::to_lower(source);
    auto [it, fresh] = entries_.try_emplace(key, entry);
    if (fresh) return;
    auto& cur = it->second;
    if (entry.probability > cur.probability ||
        (entry.probability == cur.probability && entry.target < cur.target))
      cur = std::move(entry);
  }

  const DictionaryEntry* lookup(std::string_view lemma) const {
    auto it = entries_.find(text::to_lower(lemma));
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// TSV `source<TAB>target<TAB>probability`, sorted by source.
  void write(std::ostream& out) const {
    char buf[64];
    for (const auto& [src, e] : entries_) {
      std::snprintf(buf, sizeof buf, "%.10g", e.probability);
      out << src << '\t' << e.target << '\t' << buf << '\n';
    }
  }

  /// Reads the TSV format; a missing probability column means 1.0. When a
  /// source appears more than once the best target wins.
  static LemmaDictionary read(std::istream& in) {
    LemmaDictionary d;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view view = line;
      if (lineno == 1) view = text::strip_bom(view);
      if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
      if (text::trim(view).empty() || view.front() == '#') continue;
      auto fields = text::split(view, '\t');
      if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty())
        throw Error(ErrorCode::Io, "dictionary line " + std::to_string(lineno) + ": expected source<TAB>target[<TAB>p]");
      double p = 1.0;
      if (fields.size() == 3) {
        try {
          p = std::stod(fields[2]);
        } catch (const std::exception&) {
          throw Error(ErrorCode::Io, "dictionary line " + std::to_string(lineno) + ": bad probability");
        }
      }
      d.insert(fields[0], {fields[1], p});
    }
    return d;
  }

 private:
  std::map<std::string, DictionaryEntry> entries_;
  double threshold_ = 0.0;
};

/// For each source word: argmax over co-occurring (non-NULL) targets of
/// t(f|e), kept iff its probability >= threshold.
inline LemmaDictionary extract_dictionary(const TranslationTable& table, double threshold) {
  LemmaDictionary dict(threshold);
  for (const auto& [f, row] : table.rows()) {
    const std::string* best = nullptr;
    double best_p = -1.0;
    for (const auto& [e, p] : row) {  // map order: ties resolve to the smaller target
      if (e == null_word) continue;
      if (p > best_p) {
        best_p = p;
        best = &e;
      }
    }
    if (best && best_p >= threshold) dict.insert(f, {*best, best_p});
  }
  return dict;
}

struct AlignmentLink {
  std::size_t source = 0;
  std::optional<std::size_t> target;  // nullopt = aligned to NULL

  friend bool operator==(const AlignmentLink&, const AlignmentLink&) = default;
};

/// Viterbi alignment under Model 1: each source token links to the target
/// (or NULL when the table has one) maximizing t(f|e). NULL wins ties, then
/// the lowest target index.
inline std::vector<AlignmentLink> align_pair(const std::vector<std::string>& source,
                                             const std::vector<std::string>& target,
                                             const TranslationTable& table) {
  std::vector<AlignmentLink> links;
  links.reserve(source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto f = text::to_lower(source[j]);
    AlignmentLink link{j, std::nullopt};
    double best = -1.0;
    if (table.has_null()) best = table.prob(f, null_word);
    for (std::size_t i = 0; i < target.size(); ++i) {
      const double p = table.prob(f, text::to_lower(target[i]));
      if (p > best) {
        best = p;
        link.target = i;
      }
    }
    links.push_back(link);
  }
  return links;
}

}  // namespace igt
