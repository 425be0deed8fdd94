#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"
#include "igt/inflection.hpp"
#include "igt/text.hpp"

namespace igt {

using Tokens = std::vector<std::string>;

namespace detail {

inline bool is_sentence_punct(char c) {
  return text::is_punct(c) || c == '"' || c == '(' || c == ')' || c == '[' || c == ']';
}

inline bool is_punct_token(std::string_view t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), is_sentence_punct);
}

}  // namespace detail

/// Whitespace split, with leading and trailing punctuation peeled off into
/// their own tokens ("ball." -> "ball" "."). Inner apostrophes stay.
inline Tokens tokenize_sentence(std::string_view s) {
  Tokens out;
  for (auto w : text::split_ws(s)) {
    std::size_t b = 0, e = w.size();
    while (b < e && detail::is_sentence_punct(w[b])) ++b;
    if (b == e) {
      out.emplace_back(w);
      continue;
    }
    while (e > b && detail::is_sentence_punct(w[e - 1])) --e;
    for (std::size_t i = 0; i < b; ++i) out.emplace_back(1, w[i]);
    out.emplace_back(w.substr(b, e - b));
    if (e < w.size()) out.emplace_back(w.substr(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// BLEU

struct BleuStats {
  std::vector<std::size_t> matches;  // clipped, per order 1..max_n
  std::vector<std::size_t> totals;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
};

inline BleuStats bleu_stats(const std::vector<Tokens>& hyps, const std::vector<Tokens>& refs, int max_n) {
  if (hyps.size() != refs.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(hyps.size()) + " hypotheses vs " +
                                               std::to_string(refs.size()) + " references");
  if (max_n < 1 || max_n > 4) throw Error(ErrorCode::LengthMismatch, "max_n must be in 1..4");
  BleuStats st;
  st.matches.assign(max_n, 0);
  st.totals.assign(max_n, 0);
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto& h = hyps[s];
    const auto& r = refs[s];
    st.hyp_len += h.size();
    st.ref_len += r.size();
    for (int n = 1; n <= max_n; ++n) {
      if (h.size() < static_cast<std::size_t>(n)) continue;
      std::map<std::vector<std::string>, std::size_t> ref_counts, hyp_counts;
      for (std::size_t i = 0; i + n <= r.size(); ++i) ++ref_counts[{r.begin() + i, r.begin() + i + n}];
      for (std::size_t i = 0; i + n <= h.size(); ++i) ++hyp_counts[{h.begin() + i, h.begin() + i + n}];
      for (const auto& [gram, c] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) st.matches[n - 1] += std::min(c, it->second);
      }
      st.totals[n - 1] += h.size() - n + 1;
    }
  }
  return st;
}

/// Corpus-level BLEU in [0,100], one reference per sentence, case-sensitive.
/// Without smoothing any zero precision gives 0. With smoothing, orders
/// n >= 2 use (m+1)/(t+1).
inline double bleu(const std::vector<Tokens>& hyps, const std::vector<Tokens>& refs, int max_n = 4,
                   bool smoothing = false) {
  const auto st = bleu_stats(hyps, refs, max_n);
  if (st.hyp_len == 0) return 0.0;
  double log_p = 0.0;
  for (int n = 0; n < max_n; ++n) {
    double m = static_cast<double>(st.matches[n]);
    double t = static_cast<double>(st.totals[n]);
    if (smoothing && n > 0) {
      m += 1.0;
      t += 1.0;
    }
    if (m == 0.0 || t == 0.0) return 0.0;
    log_p += std::log(m / t);
  }
  const double c = static_cast<double>(st.hyp_len), r = static_cast<double>(st.ref_len);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_p / max_n);
}

// ---------------------------------------------------------------------------
// Annotations

struct SubjectFeatures {
  int person = 3;          // 1, 2, 3
  bool plural = false;
  bool operator==(const SubjectFeatures&) const = default;
  bool third_singular() const { return person == 3 && !plural; }
};

enum class Tense { Past, Present, Future };

inline std::string_view tense_name(Tense t) {
  switch (t) {
    case Tense::Past: return "PST";
    case Tense::Present: return "PRS";
    case Tense::Future: return "FUT";
  }
  return "?";
}

struct EvalAnnotation {
  std::set<std::string> expected_nouns;
  std::set<std::string> expected_verbs;
  std::optional<SubjectFeatures> subject;
  std::optional<Tense> tense;
  bool operator==(const EvalAnnotation&) const = default;
};

/// "3.SG", "3SG", "1.pl" ...
inline SubjectFeatures parse_subject(std::string_view s) {
  const auto u = text::ascii_upper(text::trim(s));
  std::string_view v = u;
  if (v.size() >= 3 && v[0] >= '1' && v[0] <= '3') {
    auto rest = v.substr(1);
    if (rest.front() == '.') rest.remove_prefix(1);
    if (rest == "SG" || rest == "PL") return {v[0] - '0', rest == "PL"};
  }
  throw Error(ErrorCode::BadAnnotation, "bad subject features '" + std::string(s) + "' (expected e.g. 3.SG)");
}

inline Tense parse_tense(std::string_view s) {
  const auto u = text::ascii_upper(text::trim(s));
  if (u == "PST") return Tense::Past;
  if (u == "PRS") return Tense::Present;
  if (u == "FUT") return Tense::Future;
  throw Error(ErrorCode::BadAnnotation, "bad tense '" + std::string(s) + "' (expected PST, PRS or FUT)");
}

/// Annotation TSV: `id<TAB>nouns=a,b<TAB>verbs=c<TAB>subj=3.SG<TAB>tense=PST`,
/// all fields after the id optional. The id is the 1-based sentence number.
inline std::map<std::size_t, EvalAnnotation> parse_annotations(std::string_view content) {
  std::map<std::size_t, EvalAnnotation> out;
  std::size_t lineno = 0;
  for (auto raw : text::split_lines(text::strip_bom(content))) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = "annotation line " + std::to_string(lineno) + ": ";
    const auto fields = text::split(line, '\t');
    std::size_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoul(fields[0], &used);
      if (used != fields[0].size() || id == 0) throw std::invalid_argument("id");
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadAnnotation, where + "id must be a positive sentence number, got '" + fields[0] + "'");
    }
    if (out.count(id)) throw Error(ErrorCode::BadAnnotation, where + "duplicate id " + std::to_string(id));
    EvalAnnotation a;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto& f = fields[i];
      if (text::trim(f).empty()) continue;
      const auto eq = f.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::BadAnnotation, where + "field '" + f + "' has no '='");
      const auto key = f.substr(0, eq);
      const auto value = std::string_view(f).substr(eq + 1);
      auto words = [&] {
        std::set<std::string> s;
        for (const auto& w : text::split(value, ','))
          if (auto t = text::trim(w); !t.empty()) s.insert(text::to_lower(t));
        return s;
      };
      try {
        if (key == "nouns") a.expected_nouns = words();
        else if (key == "verbs") a.expected_verbs = words();
        else if (key == "subj") a.subject = parse_subject(value);
        else if (key == "tense") a.tense = parse_tense(value);
        else throw Error(ErrorCode::BadAnnotation, "unknown field '" + key + "'");
      } catch (const Error& e) {
        throw Error(ErrorCode::BadAnnotation, where + e.message());
      }
    }
    out.emplace(id, std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-sentence metrics

namespace detail {

/// Lowercased content words; punctuation dropped, possessive 's stripped.
inline std::vector<std::string> content_words(const Tokens& hyp) {
  std::vector<std::string> out;
  for (const auto& t : hyp) {
    if (is_punct_token(t)) continue;
    auto w = text::to_lower(t);
    if (ends_with(w, "'s") && w.size() > 2) w.resize(w.size() - 2);
    else if (ends_with(w, "\xE2\x80\x99s") && w.size() > 4) w.resize(w.size() - 4);
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

inline bool in(std::string_view w, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

inline bool is_modal(std::string_view w) {
  return in(w, {"will", "would", "can", "could", "shall", "should", "may", "might", "must", "'ll", "won't", "can't",
                "cannot", "couldn't", "wouldn't", "shouldn't", "mustn't"});
}

// Nearest preceding word, skipping negation.
inline std::string_view previous_word(const std::vector<std::string>& w, std::size_t i) {
  while (i > 0) {
    --i;
    if (w[i] != "not" && w[i] != "never" && w[i] != "n't") return w[i];
  }
  return {};
}

// Which subjects a be-form agrees with.
inline bool be_agrees(std::string_view be, const SubjectFeatures& s) {
  const bool one_sg = s.person == 1 && !s.plural;
  if (be == "am") return one_sg;
  if (be == "is" || be == "isn't") return s.third_singular();
  if (be == "are" || be == "aren't") return !s.third_singular() && !one_sg;
  if (be == "was" || be == "wasn't") return one_sg || s.third_singular();
  if (be == "were" || be == "weren't") return !s.third_singular() && !one_sg;
  return false;
}

inline bool is_be_form(std::string_view w) {
  return in(w, {"am", "is", "are", "was", "were", "isn't", "aren't", "wasn't", "weren't"});
}

// One occurrence of an expected verb, classified by its own shape.
struct VerbHit {
  std::size_t pos = 0;
  bool bare = false, third = false, past = false, participle = false, gerund = false;
  std::string_view word;
};

inline std::vector<VerbHit> find_verb_hits(const std::vector<std::string>& words, const std::string& lemma,
                                           const InflectionLexicon& lex) {
  const auto pasts = lex.past_forms(lemma);
  const auto third = lex.third_singular(lemma);
  const auto part = lex.participle(lemma);
  const auto ger = lex.gerund(lemma);
  std::vector<VerbHit> hits;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    VerbHit h;
    h.pos = i;
    h.word = w;
    h.bare = w == lemma;
    h.third = w == third;
    h.past = std::find(pasts.begin(), pasts.end(), w) != pasts.end();
    h.participle = w == part;
    h.gerund = w == ger;
    if (lemma == "be" && (w == "am" || w == "are")) h.third = true;  // present, agreement checked on the form
    if (h.bare || h.third || h.past || h.participle || h.gerund) hits.push_back(h);
  }
  return hits;
}

}  // namespace detail

/// Fraction of expected nouns present as lemma or plural; nullopt when the
/// annotation lists no nouns.
inline std::optional<double> noun_match(const Tokens& hyp, const EvalAnnotation& ann,
                                        const InflectionLexicon& lex = InflectionLexicon::builtin()) {
  if (ann.expected_nouns.empty()) return std::nullopt;
  const auto words = detail::content_words(hyp);
  const std::set<std::string> bag(words.begin(), words.end());
  std::size_t hit = 0;
  for (const auto& n : ann.expected_nouns)
    if (bag.count(n) || bag.count(lex.plural(n))) ++hit;
  return static_cast<double>(hit) / static_cast<double>(ann.expected_nouns.size());
}

/// Fraction of expected verbs present in any generated form.
inline std::optional<double> verb_match(const Tokens& hyp, const EvalAnnotation& ann,
                                        const InflectionLexicon& lex = InflectionLexicon::builtin()) {
  if (ann.expected_verbs.empty()) return std::nullopt;
  const auto words = detail::content_words(hyp);
  const std::set<std::string> bag(words.begin(), words.end());
  std::size_t hit = 0;
  for (const auto& v : ann.expected_verbs) {
    const auto forms = lex.verb_forms(v);
    if (std::any_of(forms.begin(), forms.end(), [&](const std::string& f) { return bag.count(f) > 0; })) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(ann.expected_verbs.size());
}

/// 1 when some expected verb occurs in a form consistent with the subject:
/// past forms agree with any subject; a 3.SG subject needs the -s form in
/// the present and every other subject the bare form. Auxiliaries carry the
/// agreement when present (does/do + bare, is/are + V-ing, has/have + pp,
/// modal + bare). "to" + bare is not evidence.
inline std::optional<double> subj_verb_agreement(const Tokens& hyp, const EvalAnnotation& ann,
                                                 const InflectionLexicon& lex = InflectionLexicon::builtin()) {
  if (!ann.subject || ann.expected_verbs.empty()) return std::nullopt;
  const auto& subj = *ann.subject;
  const auto words = detail::content_words(hyp);
  for (const auto& v : ann.expected_verbs) {
    for (const auto& h : detail::find_verb_hits(words, v, lex)) {
      const auto prev = detail::previous_word(words, h.pos);
      if (v == "be" && detail::is_be_form(h.word)) {
        if (detail::be_agrees(h.word, subj)) return 1.0;
        continue;
      }
      if (h.past && v != "be") return 1.0;
      if (h.third && !h.bare) {
        if (subj.third_singular()) return 1.0;
        continue;
      }
      if (h.bare) {
        if (detail::is_modal(prev) || prev == "did" || prev == "didn't") return 1.0;
        if (prev == "does" || prev == "doesn't") {
          if (subj.third_singular()) return 1.0;
          continue;
        }
        if (prev == "do" || prev == "don't") {
          if (!subj.third_singular()) return 1.0;
          continue;
        }
        if (prev == "to") continue;
        if (!subj.third_singular() && v != "be") return 1.0;
        continue;
      }
      if (h.gerund) {
        if (detail::is_be_form(prev) && detail::be_agrees(prev, subj)) return 1.0;
        continue;
      }
      if (h.participle) {
        if (prev == "had") return 1.0;
        if (prev == "has" && subj.third_singular()) return 1.0;
        if (prev == "have" && !subj.third_singular()) return 1.0;
      }
    }
  }
  return 0.0;
}

/// 1 when some expected verb occurs in the expected tense. With auxiliaries
/// on: will/shall/'ll + bare is FUT, is/am/are + V-ing PRS, was/were + V-ing
/// PST, do/does + bare PRS, did + bare PST.
inline std::optional<double> tense_match(const Tokens& hyp, const EvalAnnotation& ann,
                                         const InflectionLexicon& lex = InflectionLexicon::builtin(),
                                         bool auxiliaries = true) {
  if (!ann.tense || ann.expected_verbs.empty()) return std::nullopt;
  const Tense want = *ann.tense;
  const auto words = detail::content_words(hyp);
  for (const auto& v : ann.expected_verbs) {
    for (const auto& h : detail::find_verb_hits(words, v, lex)) {
      const auto prev = detail::previous_word(words, h.pos);
      std::set<Tense> got;
      if (v == "be" && detail::is_be_form(h.word)) {
        got.insert(h.word.substr(0, 2) == "wa" || h.word.substr(0, 2) == "we" ? Tense::Past : Tense::Present);
      } else {
        if (h.past) got.insert(Tense::Past);
        if (h.third) got.insert(Tense::Present);
        if (h.bare) {
          if (auxiliaries && detail::in(prev, {"will", "shall", "'ll", "won't"})) got = {Tense::Future};
          else if (auxiliaries && detail::in(prev, {"did", "didn't"})) got = {Tense::Past};
          else if (prev != "to" && !detail::is_modal(prev)) got.insert(Tense::Present);
        }
        if (h.gerund && auxiliaries && detail::is_be_form(prev))
          got.insert(prev.substr(0, 2) == "wa" || prev.substr(0, 2) == "we" ? Tense::Past : Tense::Present);
      }
      if (got.count(want)) return 1.0;
    }
  }
  return 0.0;
}

/// Percentage of distinct lowercase non-punctuation tokens; 100 for an
/// empty sentence.
inline double sentence_non_repetition(const Tokens& hyp) {
  std::vector<std::string> words;
  for (const auto& t : hyp)
    if (!detail::is_punct_token(t)) words.push_back(text::to_lower(t));
  if (words.empty()) return 100.0;
  const std::set<std::string> uniq(words.begin(), words.end());
  return 100.0 * static_cast<double>(uniq.size()) / static_cast<double>(words.size());
}

/// Macro average over sentences; 100 for an empty corpus.
inline double non_repetition(const std::vector<Tokens>& hyps) {
  if (hyps.empty()) return 100.0;
  double sum = 0.0;
  for (const auto& h : hyps) sum += sentence_non_repetition(h);
  return sum / static_cast<double>(hyps.size());
}

// ---------------------------------------------------------------------------

struct EvalOptions {
  bool auxiliaries = true;
  bool smoothing = false;
};

struct EvalReport {
  std::optional<double> noun_match;
  std::optional<double> verb_match;
  std::optional<double> subj_verb_agreement;
  std::optional<double> tense_match;
  double non_repetition = 100.0;
  double bleu4 = 0.0;
  double bleu1 = 0.0;
  std::size_t n_sentences = 0;
  // sentences eligible for each metric
  std::size_t noun_coverage = 0;
  std::size_t verb_coverage = 0;
  std::size_t agreement_coverage = 0;
  std::size_t tense_coverage = 0;
};

/// Scores a hypothesis corpus. `annotations` is keyed by 1-based sentence
/// number; sentences without the needed annotation are left out of that
/// metric's average.
inline EvalReport evaluate(const std::vector<Tokens>& hyps, const std::vector<Tokens>& refs,
                           const std::map<std::size_t, EvalAnnotation>& annotations,
                           const InflectionLexicon& lex = InflectionLexicon::builtin(), const EvalOptions& opt = {}) {
  if (hyps.size() != refs.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(hyps.size()) + " hypotheses vs " +
                                               std::to_string(refs.size()) + " references");
  if (!annotations.empty() && annotations.rbegin()->first > hyps.size())
    throw Error(ErrorCode::LengthMismatch, "annotation for sentence " + std::to_string(annotations.rbegin()->first) +
                                               " but only " + std::to_string(hyps.size()) + " sentences");
  EvalReport r;
  r.n_sentences = hyps.size();
  double noun = 0, verb = 0, agr = 0, tense = 0;
  for (const auto& [id, ann] : annotations) {
    const auto& h = hyps[id - 1];
    if (auto x = noun_match(h, ann, lex)) noun += *x, ++r.noun_coverage;
    if (auto x = verb_match(h, ann, lex)) verb += *x, ++r.verb_coverage;
    if (auto x = subj_verb_agreement(h, ann, lex)) agr += *x, ++r.agreement_coverage;
    if (auto x = tense_match(h, ann, lex, opt.auxiliaries)) tense += *x, ++r.tense_coverage;
  }
  auto pct = [](double sum, std::size_t n) -> std::optional<double> {
    if (n == 0) return std::nullopt;
    return 100.0 * sum / static_cast<double>(n);
  };
  r.noun_match = pct(noun, r.noun_coverage);
  r.verb_match = pct(verb, r.verb_coverage);
  r.subj_verb_agreement = pct(agr, r.agreement_coverage);
  r.tense_match = pct(tense, r.tense_coverage);
  r.non_repetition = non_repetition(hyps);
  if (!hyps.empty()) {
    r.bleu4 = bleu(hyps, refs, 4, opt.smoothing);
    r.bleu1 = bleu(hyps, refs, 1, opt.smoothing);
  }
  return r;
}

/// key=value lines; absent metrics print "n/a".
inline std::string format_report(const EvalReport& r) {
  auto num = [](std::optional<double> v) {
    if (!v) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return std::string(buf);
  };
  std::string out;
  auto line = [&out](std::string_view k, const std::string& v) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  };
  line("sentences", std::to_string(r.n_sentences));
  line("noun_match", num(r.noun_match));
  line("noun_match_coverage", std::to_string(r.noun_coverage));
  line("verb_match", num(r.verb_match));
  line("verb_match_coverage", std::to_string(r.verb_coverage));
  line("subj_verb_agreement", num(r.subj_verb_agreement));
  line("subj_verb_agreement_coverage", std::to_string(r.agreement_coverage));
  line("tense_match", num(r.tense_match));
  line("tense_match_coverage", std::to_string(r.tense_coverage));
  line("non_repetition", num(r.non_repetition));
  line("bleu4", num(r.bleu4));
  line("bleu1", num(r.bleu1));
  return out;
}

}  // namespace igt
