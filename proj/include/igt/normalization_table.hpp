#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"
#include "igt/text.hpp"

namespace igt {

/// Order of the labels produced when a person/number composite such as
/// "3SG" is expanded.
enum class PersonNumberOrder { PersonFirst, NumberFirst };

struct AnalyzerEntry {
  std::vector<std::string> labels;  // may be empty: the tag is dropped
  bool verbal = false;              // first label attaches with '-'
};

/// Morpheme-label mapping tables. Immutable once loaded.
///
/// Text format, one rule per line, '#' starts a comment:
///
///   [registry]    canonical labels, whitespace separated
///   [variants]    raw<TAB>CANON1.CANON2
///   [composites]  @order<TAB>person-first|number-first
///                 @persons<TAB>1.2.3
///                 number-suffix<TAB>CANONICAL-NUMBER
///   [analyzer]    tag<TAB>CANON1.CANON2|(none)[<TAB>verbal]
///   [roots]       analyzer-root<TAB>restored-lemma
class NormalizationTable {
 public:
  struct CompositeRule {
    std::string suffix;
    std::string number;
  };

  const std::set<std::string>& registry() const { return registry_; }
  const std::map<std::string, std::vector<std::string>>& variants() const { return variants_; }
  const std::vector<CompositeRule>& composite_rules() const { return composites_; }
  const std::vector<std::string>& persons() const { return persons_; }
  const std::map<std::string, AnalyzerEntry>& analyzer_map() const { return analyzer_; }
  const std::map<std::string, std::string>& roots() const { return roots_; }
  PersonNumberOrder order() const { return order_; }

  void set_order(PersonNumberOrder order) { order_ = order; }

  bool in_registry(std::string_view label) const { return registry_.count(std::string(label)) != 0; }

  /// Exact match first, then ASCII case-folded match.
  const std::vector<std::string>* find_variant(std::string_view raw) const {
    if (auto it = variants_.find(std::string(raw)); it != variants_.end()) return &it->second;
    if (auto it = folded_.find(text::ascii_upper(raw)); it != folded_.end()) return &it->second;
    return nullptr;
  }

  /// Splits "<person><number>" composites ("3SG", "1pl", "3S").
  std::optional<std::vector<std::string>> match_composite(std::string_view raw) const {
    for (const auto& person : persons_) {
      if (raw.size() <= person.size() || raw.substr(0, person.size()) != person) continue;
      const auto rest = raw.substr(person.size());
      const CompositeRule* hit = nullptr;
      for (const auto& rule : composites_)
        if (rule.suffix == rest) {
          hit = &rule;
          break;
        }
      if (!hit) {
        const auto folded = text::ascii_upper(rest);
        for (const auto& rule : composites_)
          if (text::ascii_upper(rule.suffix) == folded) {
            hit = &rule;
            break;
          }
      }
      if (!hit) continue;
      if (order_ == PersonNumberOrder::PersonFirst) return std::vector<std::string>{person, hit->number};
      return std::vector<std::string>{hit->number, person};
    }
    return std::nullopt;
  }

  const AnalyzerEntry* find_analyzer(std::string_view tag) const {
    auto it = analyzer_.find(std::string(tag));
    return it == analyzer_.end() ? nullptr : &it->second;
  }

  /// Root restoration lookup (exact, case-sensitive); returns `root` when absent.
  std::string restore_root(std::string_view root) const {
    auto it = roots_.find(std::string(root));
    return it == roots_.end() ? std::string(root) : it->second;
  }

  /// True when `segment` would be normalized by this table rather than
  /// reported UNKNOWN. Used by the gloss tokenizer to classify morphs.
  bool is_known_label(std::string_view segment) const {
    if (segment.empty()) return false;
    if (find_variant(segment) || in_registry(text::ascii_upper(segment)) || match_composite(segment))
      return true;
    if (segment.size() > 1 && segment.back() == '.') return is_known_label(segment.substr(0, segment.size() - 1));
    return false;
  }

  static NormalizationTable parse(std::string_view source, std::string_view origin = "<table>");

 private:
  std::set<std::string> registry_;
  std::map<std::string, std::vector<std::string>> variants_;
  std::map<std::string, std::vector<std::string>> folded_;
  std::vector<CompositeRule> composites_;
  std::vector<std::string> persons_;
  std::map<std::string, AnalyzerEntry> analyzer_;
  std::map<std::string, std::string> roots_;
  PersonNumberOrder order_ = PersonNumberOrder::PersonFirst;
};

namespace detail {

inline std::vector<std::string> split_labels(std::string_view field) {
  std::vector<std::string> out;
  if (text::trim(field) == "(none)") return out;
  for (auto& piece : text::split(text::trim(field), '.'))
    if (!piece.empty()) out.push_back(piece);
  return out;
}

inline void resolve_variant(const std::string& key, std::map<std::string, std::vector<std::string>>& variants,
                            std::map<std::string, int>& state) {
  // state: 1 = in progress, 2 = resolved
  auto& s = state[key];
  if (s == 2) return;
  if (s == 1) throw Error(ErrorCode::CycleDetected, "variant mapping cycles through label '" + key + "'");
  s = 1;
  std::vector<std::string> resolved;
  for (const auto& label : variants.at(key)) {
    auto it = variants.find(label);
    if (it == variants.end() || (it->second.size() == 1 && it->second.front() == label)) {
      resolved.push_back(label);
      continue;
    }
    resolve_variant(label, variants, state);
    const auto& sub = variants.at(label);
    resolved.insert(resolved.end(), sub.begin(), sub.end());
  }
  variants[key] = std::move(resolved);
  state[key] = 2;
}

}  // namespace detail

inline NormalizationTable NormalizationTable::parse(std::string_view source, std::string_view origin) {
  NormalizationTable table;
  enum class Section { None, Registry, Variants, Composites, Analyzer, Roots } section = Section::None;
  std::map<std::string, std::size_t> image_lines;  // label -> first line it was referenced on
  const std::string where(origin);

  auto fail = [&](std::size_t line, const std::string& msg) -> Error {
    return Error(ErrorCode::TableParseError, where + ":" + std::to_string(line) + ": " + msg);
  };
  auto note_images = [&](const std::vector<std::string>& labels, std::size_t line) {
    for (const auto& l : labels) image_lines.emplace(l, line);
  };

  const auto lines = text::split_lines(text::strip_bom(source));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (text::trim(line).empty()) continue;
    const auto trimmed = text::trim(line);
    if (trimmed.front() == '[') {
      if (trimmed == "[registry]") section = Section::Registry;
      else if (trimmed == "[variants]") section = Section::Variants;
      else if (trimmed == "[composites]") section = Section::Composites;
      else if (trimmed == "[analyzer]") section = Section::Analyzer;
      else if (trimmed == "[roots]") section = Section::Roots;
      else throw fail(lineno, "unknown section " + std::string(trimmed));
      continue;
    }
    if (section == Section::Registry) {
      for (auto label : text::split_ws(trimmed)) table.registry_.emplace(label);
      continue;
    }
    auto fields = text::split(line, '\t');
    for (auto& f : fields) f = std::string(text::trim(f));
    if (fields.size() < 2 || fields[0].empty())
      throw fail(lineno, "expected <key><TAB><value>");

    switch (section) {
      case Section::None:
        throw fail(lineno, "rule outside of a section");
      case Section::Variants: {
        auto labels = detail::split_labels(fields[1]);
        if (labels.empty()) throw fail(lineno, "variant '" + fields[0] + "' has no canonical labels");
        if (!table.variants_.emplace(fields[0], labels).second)
          throw fail(lineno, "duplicate variant '" + fields[0] + "'");
        note_images(labels, lineno);
        break;
      }
      case Section::Composites:
        if (fields[0] == "@order") {
          if (fields[1] == "person-first") table.order_ = PersonNumberOrder::PersonFirst;
          else if (fields[1] == "number-first") table.order_ = PersonNumberOrder::NumberFirst;
          else throw fail(lineno, "order must be person-first or number-first");
        } else if (fields[0] == "@persons") {
          table.persons_ = detail::split_labels(fields[1]);
          note_images(table.persons_, lineno);
        } else {
          table.composites_.push_back({fields[0], fields[1]});
          note_images({fields[1]}, lineno);
        }
        break;
      case Section::Analyzer: {
        AnalyzerEntry entry{detail::split_labels(fields[1]), false};
        if (fields.size() >= 3) {
          if (fields[2] != "verbal") throw fail(lineno, "third analyzer column must be 'verbal'");
          entry.verbal = true;
        }
        note_images(entry.labels, lineno);
        if (!table.analyzer_.emplace(fields[0], std::move(entry)).second)
          throw fail(lineno, "duplicate analyzer tag '" + fields[0] + "'");
        break;
      }
      case Section::Roots:
        table.roots_[fields[0]] = fields[1];
        break;
      case Section::Registry:
        break;
    }
  }

  for (const auto& [label, line] : image_lines)
    if (!table.in_registry(label)) throw fail(line, "label '" + label + "' is not in [registry]");

  std::map<std::string, int> state;
  std::vector<std::string> keys;
  for (const auto& [k, v] : table.variants_) keys.push_back(k);
  for (const auto& k : keys) detail::resolve_variant(k, table.variants_, state);

  for (const auto& [k, v] : table.variants_) table.folded_.emplace(text::ascii_upper(k), v);
  return table;
}

inline NormalizationTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open table file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return NormalizationTable::parse(buf.str(), path);
}

/// The embedded default table: Leipzig labels, the Turkish ODIN variants and
/// the Turkish analyzer tag set.
inline constexpr std::string_view default_table_text = R"TABLE(# Default morpheme-label normalization table.
# Leipzig labels are preferred; Unimorph-style labels fill the gaps.

[registry]
1 2 3 SG PL DU
NOM ACC GEN DAT LOC ABL INS COM ERG ABS VOC ALL EQU
PST PRS FUT AOR PROG PFV IPFV PRF RPRT EVID NEC OPT COND IMP SBJV IRR
NMLZ ADV PTCP CVB INF COP NEG Q REFL RECP CAUS PASS ABIL
POSS NPOSS DET DEF INDF DEM PROX DIST EMPH FOC TOP REL AGR ASP AV IC NA

[variants]
# nominalizer
NML	NMLZ
NOMZ	NMLZ
FNom	NMLZ
NOML	NMLZ
# present
PRES	PRS
PR	PRS
pres	PRS
Pres	PRS
PRESENT	PRS
# past
PA	PST
Pst	PST
PST	PST
Past	PST
pst	PST
PAST	PST
PT	PST
PTS	PST
PST1S	PST
past	PST
# ablative
Abl	ABL
Abli	ABL
abl	ABL
ABL	ABL
# adverbial
ADVL	ADV
Adv	ADV
# reported past
ReportedPast	RPRT
REPPAST	RPRT
# progressive
Progr	PROG
Prog	PROG
PROGR	PROG
# number
SING	SG
S	SG
PLUR	PL
# misc
PERF	PRF
Perf	PRF
Neg	NEG
Acc	ACC
Nom	NOM
Dat	DAT
Gen	GEN
Loc	LOC
Instr	INS
INSTR	INS
Refl	REFL

[composites]
@order	person-first
@persons	1.2.3
SG	SG
S	SG
SING	SG
PL	PL
P	PL
PLUR	PL
DU	DU

[analyzer]
# agreement (A3pl collapses to 3.SG, matching the reference golden data)
A1sg	1.SG
A2sg	2.SG
A3sg	3.SG
A1pl	1.PL
A2pl	2.PL
A3pl	3.SG
# possessive
P1sg	1.SG.POSS
P2sg	2.SG.POSS
P3sg	3.SG.POSS
P1pl	1.PL.POSS
P2pl	2.PL.POSS
P3pl	3.PL.POSS
Pnon	NPOSS
# case
Nom	NOM
Acc	ACC
Dat	DAT
Loc	LOC
Abl	ABL
Gen	GEN
Ins	INS
Equ	EQU
# tense, aspect, mood
Prog1	PROG	verbal
Prog2	PROG	verbal
Past	PST	verbal
Aor	AOR	verbal
Fut	FUT	verbal
Narr	EVID	verbal
Pres	PRS	verbal
Neces	NEC	verbal
Opt	OPT	verbal
Cond	COND
Imp	IMP
Neg	NEG
Able	ABIL
Cop	COP
Pass	PASS
Caus	CAUS
Reflex	REFL
Recip	RECP
Inf	INF
# participles
NarrPart	EVID.PTCP
AorPart	AOR.PTCP
PresPart	PRS.PTCP
PastPart	PST.PTCP
FutPart	FUT.PTCP
# part-of-speech and polarity tags carry no gloss label
Prop	(none)
Noun	(none)
Verb	(none)
Adj	(none)
Adverb	(none)
Pron	(none)
Pos	(none)
Punc	(none)

[roots]
Kadi	Kadin
et	ediyor
)TABLE";

inline const NormalizationTable& default_table() {
  static const NormalizationTable table = NormalizationTable::parse(default_table_text, "<default>");
  return table;
}

}  // namespace igt
