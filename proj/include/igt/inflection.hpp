#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"
#include "igt/text.hpp"

// Small English inflection lexicon used by the evaluation metrics: irregular
// tables plus suffix rules that are total over lowercase alphabetic lemmas.
namespace igt {

namespace detail {

// lemma past[/past2] [participle]
inline constexpr std::string_view builtin_irregular_verbs = R"(
arise arose arisen
awake awoke awoken
be was/were been
bear bore borne
beat beat beaten
become became become
begin began begun
bend bent bent
bet bet bet
bid bid bid
bind bound bound
bite bit bitten
bleed bled bled
blow blew blown
break broke broken
breed bred bred
bring brought brought
broadcast broadcast broadcast
build built built
burn burned/burnt burned
burst burst burst
buy bought bought
cast cast cast
catch caught caught
choose chose chosen
cling clung clung
come came come
cost cost cost
creep crept crept
cut cut cut
deal dealt dealt
dig dug dug
dive dove/dived dived
do did done
draw drew drawn
dream dreamed/dreamt dreamed
drink drank drunk
drive drove driven
dwell dwelt dwelt
eat ate eaten
fall fell fallen
feed fed fed
feel felt felt
fight fought fought
find found found
flee fled fled
fling flung flung
fly flew flown
forbid forbade forbidden
forecast forecast forecast
forget forgot forgotten
forgive forgave forgiven
freeze froze frozen
get got gotten
give gave given
go went gone
grind ground ground
grow grew grown
hang hung hung
have had had
hear heard heard
hide hid hidden
hit hit hit
hold held held
hurt hurt hurt
keep kept kept
kneel knelt knelt
know knew known
lay laid laid
lead led led
lean leaned/leant leaned
leap leaped/leapt leaped
learn learned/learnt learned
leave left left
lend lent lent
let let let
lie lay lain
light lit lit
lose lost lost
make made made
mean meant meant
meet met met
mislead misled misled
mistake mistook mistaken
overcome overcame overcome
overtake overtook overtaken
pay paid paid
prove proved proven
put put put
quit quit quit
read read read
rid rid rid
ride rode ridden
ring rang rung
rise rose risen
run ran run
say said said
see saw seen
seek sought sought
sell sold sold
send sent sent
set set set
sew sewed sewn
shake shook shaken
shed shed shed
shine shone shone
shoot shot shot
show showed shown
shrink shrank shrunk
shut shut shut
sing sang sung
sink sank sunk
sit sat sat
slay slew slain
sleep slept slept
slide slid slid
sling slung slung
slit slit slit
smell smelled/smelt smelled
sow sowed sown
speak spoke spoken
speed sped sped
spell spelled/spelt spelled
spend spent spent
spill spilled/spilt spilled
spin spun spun
spit spat spat
split split split
spoil spoiled/spoilt spoiled
spread spread spread
spring sprang sprung
stand stood stood
steal stole stolen
stick stuck stuck
sting stung stung
stink stank stunk
stride strode stridden
strike struck struck
string strung strung
strive strove striven
swear swore sworn
sweep swept swept
swell swelled swollen
swim swam swum
swing swung swung
take took taken
teach taught taught
tear tore torn
tell told told
think thought thought
throw threw thrown
thrust thrust thrust
tread trod trodden
understand understood understood
undertake undertook undertaken
undo undid undone
upset upset upset
wake woke woken
wear wore worn
weave wove woven
weep wept wept
wet wet wet
win won won
wind wound wound
withdraw withdrew withdrawn
withhold withheld withheld
withstand withstood withstood
wring wrung wrung
write wrote written
abide abode abode
behold beheld beheld
beget begot begotten
bestride bestrode bestridden
cleave cleft cleft
forsake forsook forsaken
foresee foresaw foreseen
foretell foretold foretold
inlay inlaid inlaid
mow mowed mown
outdo outdid outdone
outrun outran outrun
overdo overdid overdone
overhear overheard overheard
oversee oversaw overseen
oversleep overslept overslept
partake partook partaken
rebuild rebuilt rebuilt
redo redid redone
repay repaid repaid
rethink rethought rethought
rewind rewound rewound
rewrite rewrote rewritten
shear sheared shorn
slink slunk slunk
stave stove stove
strew strewed strewn
swell swelled swollen
unbind unbound unbound
uphold upheld upheld
wed wed wed
)";

// Verbs that double their final consonant before -ed/-ing.
inline constexpr std::string_view builtin_doubling = R"(
admit ban beg chat clap commit control drag drip drop drum fit grab grin hop hug
jog knit nod occur omit pat permit plan plod plot prefer rebel refer regret rob
rub scan ship shop shrug skip slam slap slip snap sob spot step stir stop strip
submit tap transfer trap trip wrap zip
begin cut dig forget get hit let put run set shut sit swim win
)";

inline constexpr std::string_view builtin_irregular_plurals = R"(
man men
woman women
child children
person people
foot feet
tooth teeth
goose geese
mouse mice
ox oxen
sheep sheep
fish fish
deer deer
knife knives
wife wives
life lives
leaf leaves
half halves
wolf wolves
shelf shelves
thief thieves
loaf loaves
calf calves
)";

inline bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// -s/-es/-ies, shared by verbs (3sg) and nouns (plural)
inline std::string add_s(std::string_view w) {
  std::string s(w);
  if (s.empty()) return s;
  if (ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") || ends_with(s, "ch") || ends_with(s, "sh") ||
      (ends_with(s, "o") && s.size() > 1 && !is_vowel(s[s.size() - 2])))
    return s + "es";
  if (s.size() > 1 && s.back() == 'y' && !is_vowel(s[s.size() - 2])) return s.substr(0, s.size() - 1) + "ies";
  return s + "s";
}

}  // namespace detail

class InflectionLexicon {
 public:
  InflectionLexicon() = default;

  /// Built-in tables: ~200 irregular verbs, the doubling list, irregular plurals.
  static const InflectionLexicon& builtin() {
    static const InflectionLexicon lex = [] {
      InflectionLexicon l;
      for (auto line : text::split_lines(detail::builtin_irregular_verbs)) {
        const auto f = text::split_ws(line);
        if (f.empty()) continue;
        const std::string lemma(f[0]);
        for (const auto& p : text::split(f[1], '/')) l.add_past(lemma, p);
        if (f.size() > 2) l.participles_[lemma] = std::string(f[2]);
      }
      for (auto w : text::split_ws(detail::builtin_doubling)) l.doubling_.emplace(w);
      for (auto line : text::split_lines(detail::builtin_irregular_plurals)) {
        const auto f = text::split_ws(line);
        if (f.size() == 2) l.plurals_[std::string(f[0])] = std::string(f[1]);
      }
      l.third_sg_["be"] = "is";
      l.third_sg_["have"] = "has";
      l.third_sg_["do"] = "does";
      l.third_sg_["go"] = "goes";
      return l;
    }();
    return lex;
  }

  /// Extension file, one entry per line:
  ///   past<TAB>lemma<TAB>form   3sg<TAB>lemma<TAB>form
  ///   pp<TAB>lemma<TAB>form     plural<TAB>noun<TAB>form
  /// Entries are added on top of `base`; '#' starts a comment.
  static InflectionLexicon parse(std::string_view content, const InflectionLexicon& base = builtin(),
                                 std::string_view origin = "<lexicon>") {
    InflectionLexicon l = base;
    std::size_t lineno = 0;
    for (auto raw : text::split_lines(text::strip_bom(content))) {
      ++lineno;
      auto line = text::trim(raw);
      if (line.empty() || line.front() == '#') continue;
      auto f = text::split(line, '\t');
      if (f.size() != 3 || f[1].empty() || f[2].empty())
        throw Error(ErrorCode::TableParseError, std::string(origin) + ":" + std::to_string(lineno) +
                                                    ": expected kind<TAB>lemma<TAB>form");
      const auto lemma = text::to_lower(f[1]);
      const auto form = text::to_lower(f[2]);
      if (f[0] == "past") {
        // a file entry replaces the rule-generated past
        if (!l.user_past_.count(lemma)) l.past_.erase(lemma);
        l.user_past_.insert(lemma);
        l.add_past(lemma, form);
      } else if (f[0] == "3sg") {
        l.third_sg_[lemma] = form;
      } else if (f[0] == "pp") {
        l.participles_[lemma] = form;
      } else if (f[0] == "plural") {
        l.plurals_[lemma] = form;
      } else {
        throw Error(ErrorCode::TableParseError,
                    std::string(origin) + ":" + std::to_string(lineno) + ": unknown entry kind '" + f[0] + "'");
      }
    }
    return l;
  }

  static InflectionLexicon load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open lexicon '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), builtin(), path);
  }

  void add_past(const std::string& lemma, std::string form) {
    auto& v = past_[lemma];
    if (std::find(v.begin(), v.end(), form) == v.end()) v.push_back(std::move(form));
  }

  bool doubles(std::string_view lemma) const { return doubling_.count(std::string(lemma)) > 0; }

  std::string third_singular(std::string_view lemma) const {
    if (auto it = third_sg_.find(std::string(lemma)); it != third_sg_.end()) return it->second;
    return detail::add_s(lemma);
  }

  std::vector<std::string> past_forms(std::string_view lemma) const {
    if (auto it = past_.find(std::string(lemma)); it != past_.end()) return it->second;
    std::string s(lemma);
    if (s.empty()) return {s};
    if (s.back() == 'e') return {s + "d"};
    if (s.size() > 1 && s.back() == 'y' && !detail::is_vowel(s[s.size() - 2])) return {s.substr(0, s.size() - 1) + "ied"};
    if (doubles(s)) return {s + s.back() + "ed"};
    return {s + "ed"};
  }

  std::string participle(std::string_view lemma) const {
    if (auto it = participles_.find(std::string(lemma)); it != participles_.end()) return it->second;
    return past_forms(lemma).front();
  }

  std::string gerund(std::string_view lemma) const {
    std::string s(lemma);
    if (s == "be") return "being";
    if (detail::ends_with(s, "ie")) return s.substr(0, s.size() - 2) + "ying";
    if (s.size() > 2 && s.back() == 'e' && !detail::ends_with(s, "ee") && !detail::ends_with(s, "ye") &&
        !detail::ends_with(s, "oe"))
      return s.substr(0, s.size() - 1) + "ing";
    if (doubles(s)) return s + s.back() + "ing";
    return s + "ing";
  }

  std::string plural(std::string_view noun) const {
    if (auto it = plurals_.find(std::string(noun)); it != plurals_.end()) return it->second;
    return detail::add_s(noun);
  }

  /// Every surface form the lexicon generates for a verb lemma.
  std::set<std::string> verb_forms(std::string_view lemma) const {
    std::set<std::string> out{std::string(lemma), third_singular(lemma), participle(lemma), gerund(lemma)};
    for (auto& p : past_forms(lemma)) out.insert(std::move(p));
    if (lemma == "be") out.insert({"am", "are", "is"});
    return out;
  }

 private:
  std::map<std::string, std::vector<std::string>> past_;
  std::map<std::string, std::string> participles_;
  std::map<std::string, std::string> third_sg_;
  std::map<std::string, std::string> plurals_;
  std::set<std::string> doubling_;
  std::set<std::string> user_past_;
};

}  // namespace igt
