#include <gtest/gtest.h>

#include <random>

#include "igt/igt.hpp"
#include "oracle/bleu_naive.hpp"
#include "support.hpp"

using namespace igt;

namespace {

Tokens tok(std::string_view s) { return tokenize_sentence(s); }

std::vector<Tokens> corpus(const std::string& text) {
  std::vector<Tokens> out;
  for (const auto& l : support::lines_of(text)) out.push_back(tok(l));
  return out;
}

EvalAnnotation ann(std::string_view line) { return parse_annotations("1\t" + std::string(line)).at(1); }

double agree(std::string_view hyp, std::string_view a) { return subj_verb_agreement(tok(hyp), ann(a)).value(); }
double tense(std::string_view hyp, std::string_view a, bool aux = true) {
  return tense_match(tok(hyp), ann(a), InflectionLexicon::builtin(), aux).value();
}

ErrorCode annotation_error(std::string_view text) {
  try {
    parse_annotations(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST(TokenizeSentence, PeelsPunctuation) {
  EXPECT_EQ(tok("The man's ball.\""), (Tokens{"The", "man's", "ball", ".\""}));
  EXPECT_EQ(tok("(yes) ..."), (Tokens{"(", "yes", ")", "..."}));
}

TEST(Bleu, ClippedUnigramPrecision) {
  EXPECT_NEAR(bleu({tok("the the the the")}, {tok("the cat")}, 1), 25.0, 1e-12);
  const auto st = bleu_stats({tok("the the the the")}, {tok("the cat")}, 1);
  EXPECT_EQ(st.matches[0], 1u);
  EXPECT_EQ(st.totals[0], 4u);
  EXPECT_NEAR(bleu({tok("the the the the")}, {tok("the the cat sat")}, 1), 50.0, 1e-12);
}

TEST(Bleu, IdenticalCorporaScoreHundred) {
  const auto ref = corpus(support::read_data("eval_gold.txt"));
  EXPECT_NEAR(bleu(ref, ref, 4), 100.0, 1e-9);
  EXPECT_NEAR(bleu(ref, ref, 1), 100.0, 1e-9);
}

TEST(Bleu, EdgeCases) {
  EXPECT_EQ(bleu({Tokens{}}, {tok("a b")}, 4), 0.0);
  EXPECT_EQ(bleu({tok("a b")}, {tok("a b")}, 4), 0.0);  // no 3-grams at all
  EXPECT_NEAR(bleu({tok("a b")}, {tok("a b")}, 4, true), 100.0, 1e-9);
  EXPECT_NEAR(bleu({tok("a")}, {tok("a b")}, 1), 100.0 * std::exp(1.0 - 2.0), 1e-9);
  try {
    bleu({tok("a")}, {}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  EXPECT_THROW(bleu_stats({tok("a")}, {tok("a")}, 5), Error);
  EXPECT_THROW(bleu_stats({tok("a")}, {tok("a")}, 0), Error);
}

TEST(Bleu, CaseSensitive) { EXPECT_EQ(bleu({tok("The")}, {tok("the")}, 1), 0.0); }

TEST(Bleu, MatchesNaiveDefinition) {
  std::mt19937_64 rng(99);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t vocab = pick(2, 6);
    std::vector<Tokens> hyps, refs;
    for (std::size_t s = pick(1, 6); s > 0; --s) {
      Tokens h, r;
      for (std::size_t i = pick(0, 10); i > 0; --i) h.push_back("w" + std::to_string(pick(0, vocab - 1)));
      for (std::size_t i = pick(1, 10); i > 0; --i) r.push_back("w" + std::to_string(pick(0, vocab - 1)));
      hyps.push_back(h);
      refs.push_back(r);
    }
    for (int n = 1; n <= 4; ++n)
      EXPECT_NEAR(bleu(hyps, refs, n), oracle::bleu(hyps, refs, static_cast<std::size_t>(n)), 1e-9) << trial;
  }
}

// bleu1 >= bleu4 does not hold in general: a long perfect sentence and a
// short wrong one.
TEST(Bleu, FourGramCanExceedUnigram) {
  Tokens perfect;
  for (int i = 0; i < 100; ++i) perfect.push_back("t" + std::to_string(i));
  const std::vector<Tokens> refs{perfect, tok("a b c d")};
  const std::vector<Tokens> hyps{perfect, tok("w x y z")};
  EXPECT_NEAR(bleu(hyps, refs, 1), 100.0 * 100.0 / 104.0, 1e-9);
  EXPECT_GT(bleu(hyps, refs, 4), bleu(hyps, refs, 1));
}

TEST(NonRepetition, Values) {
  EXPECT_NEAR(sentence_non_repetition(tok("the the the the")), 25.0, 1e-12);
  EXPECT_NEAR(sentence_non_repetition(tok("a b a b")), 50.0, 1e-12);
  EXPECT_NEAR(sentence_non_repetition(tok("The cat sat.")), 100.0, 1e-12);
  EXPECT_NEAR(sentence_non_repetition(tok("The the cat sat.")), 75.0, 1e-12);
  EXPECT_NEAR(sentence_non_repetition(Tokens{}), 100.0, 1e-12);
  EXPECT_NEAR(non_repetition({tok("a b a b"), tok("a b")}), 75.0, 1e-12);
}

TEST(NounMatch, LemmaOrPlural) {
  const auto a = ann("nouns=child,ball,box");
  EXPECT_NEAR(*noun_match(tok("The children's balls and a box."), a), 1.0, 1e-12);
  EXPECT_NEAR(*noun_match(tok("The child."), a), 1.0 / 3.0, 1e-12);
  EXPECT_FALSE(noun_match(tok("x"), ann("verbs=go")).has_value());
}

TEST(VerbMatch, AnyForm) {
  const auto a = ann("verbs=write,stop");
  EXPECT_NEAR(*verb_match(tok("She wrote and stopped."), a), 1.0, 1e-12);
  EXPECT_NEAR(*verb_match(tok("Writing is stopping."), a), 1.0, 1e-12);
  EXPECT_NEAR(*verb_match(tok("Written."), a), 0.5, 1e-12);
  EXPECT_NEAR(*verb_match(tok("nothing"), a), 0.0, 1e-12);
}

TEST(Agreement, ThirdSingular) {
  EXPECT_EQ(agree("He talks.", "verbs=talk\tsubj=3.SG"), 1.0);
  EXPECT_EQ(agree("He talked.", "verbs=talk\tsubj=3.SG"), 1.0);
  EXPECT_EQ(agree("He talk.", "verbs=talk\tsubj=3.SG"), 0.0);
  EXPECT_EQ(agree("They talk.", "verbs=talk\tsubj=3.PL"), 1.0);
  EXPECT_EQ(agree("They talks.", "verbs=talk\tsubj=3.PL"), 0.0);
  EXPECT_EQ(agree("I talk.", "verbs=talk\tsubj=1SG"), 1.0);
}

TEST(Agreement, Auxiliaries) {
  EXPECT_EQ(agree("He does not talk.", "verbs=talk\tsubj=3SG"), 1.0);
  EXPECT_EQ(agree("He do not talk.", "verbs=talk\tsubj=3SG"), 0.0);
  EXPECT_EQ(agree("He can talk.", "verbs=talk\tsubj=3SG"), 1.0);
  EXPECT_EQ(agree("He wants to talk.", "verbs=talk\tsubj=3SG"), 0.0);
  EXPECT_EQ(agree("He is talking.", "verbs=talk\tsubj=3SG"), 1.0);
  EXPECT_EQ(agree("He are talking.", "verbs=talk\tsubj=3SG"), 0.0);
  EXPECT_EQ(agree("He has taken it.", "verbs=take\tsubj=3SG"), 1.0);
  EXPECT_EQ(agree("They have taken it.", "verbs=take\tsubj=3PL"), 1.0);
  EXPECT_EQ(agree("They has taken it.", "verbs=take\tsubj=3PL"), 0.0);
}

TEST(Agreement, Be) {
  EXPECT_EQ(agree("It is hard.", "verbs=be\tsubj=3SG"), 1.0);
  EXPECT_EQ(agree("It are hard.", "verbs=be\tsubj=3SG"), 0.0);
  EXPECT_EQ(agree("I am here.", "verbs=be\tsubj=1SG"), 1.0);
  EXPECT_EQ(agree("We were here.", "verbs=be\tsubj=1PL"), 1.0);
  EXPECT_EQ(agree("We was here.", "verbs=be\tsubj=1PL"), 0.0);
}

TEST(Agreement, NeedsSubjectAndVerbs) {
  EXPECT_FALSE(subj_verb_agreement(tok("He talks."), ann("verbs=talk")).has_value());
  EXPECT_FALSE(subj_verb_agreement(tok("He talks."), ann("subj=3SG")).has_value());
}

TEST(Tense, SimpleForms) {
  EXPECT_EQ(tense("He talked.", "verbs=talk\ttense=PST"), 1.0);
  EXPECT_EQ(tense("He talks.", "verbs=talk\ttense=PST"), 0.0);
  EXPECT_EQ(tense("He talks.", "verbs=talk\ttense=PRS"), 1.0);
  EXPECT_EQ(tense("They talk.", "verbs=talk\ttense=PRS"), 1.0);
  EXPECT_EQ(tense("She put it there.", "verbs=put\ttense=PST"), 1.0);
}

TEST(Tense, Auxiliaries) {
  EXPECT_EQ(tense("He will talk.", "verbs=talk\ttense=FUT"), 1.0);
  EXPECT_EQ(tense("He will talk.", "verbs=talk\ttense=PRS"), 0.0);
  EXPECT_EQ(tense("He did not talk.", "verbs=talk\ttense=PST"), 1.0);
  EXPECT_EQ(tense("He was talking.", "verbs=talk\ttense=PST"), 1.0);
  EXPECT_EQ(tense("He is talking.", "verbs=talk\ttense=PRS"), 1.0);
  EXPECT_EQ(tense("He will talk.", "verbs=talk\ttense=FUT", false), 0.0);
  EXPECT_EQ(tense("He was talking.", "verbs=talk\ttense=PST", false), 0.0);
}

TEST(Annotations, Parse) {
  const auto a = parse_annotations(support::read_data("eval_ann.tsv"));
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.at(2).expected_verbs, (std::set<std::string>{"think", "write"}));
  EXPECT_EQ(a.at(3).tense, Tense::Past);
  EXPECT_EQ(a.at(1).subject, (SubjectFeatures{3, false}));
  EXPECT_EQ(parse_subject("1.pl"), (SubjectFeatures{1, true}));
  EXPECT_EQ(tense_name(Tense::Future), "FUT");
}

TEST(Annotations, Errors) {
  EXPECT_EQ(annotation_error("x\tnouns=a\n"), ErrorCode::BadAnnotation);
  EXPECT_EQ(annotation_error("0\tnouns=a\n"), ErrorCode::BadAnnotation);
  EXPECT_EQ(annotation_error("1\tnouns=a\n1\tverbs=b\n"), ErrorCode::BadAnnotation);
  EXPECT_EQ(annotation_error("1\tcolor=red\n"), ErrorCode::BadAnnotation);
  EXPECT_EQ(annotation_error("1\tnouns\n"), ErrorCode::BadAnnotation);
  EXPECT_EQ(annotation_error("1\tsubj=4XX\n"), ErrorCode::BadAnnotation);
  EXPECT_EQ(annotation_error("1\ttense=SOON\n"), ErrorCode::BadAnnotation);
}

TEST(Lexicon, Rules) {
  const auto& lex = InflectionLexicon::builtin();
  EXPECT_EQ(lex.past_forms("talk"), std::vector<std::string>{"talked"});
  EXPECT_EQ(lex.past_forms("love"), std::vector<std::string>{"loved"});
  EXPECT_EQ(lex.past_forms("carry"), std::vector<std::string>{"carried"});
  EXPECT_EQ(lex.past_forms("stop"), std::vector<std::string>{"stopped"});
  EXPECT_EQ(lex.past_forms("be"), (std::vector<std::string>{"was", "were"}));
  EXPECT_EQ(lex.participle("write"), "written");
  EXPECT_EQ(lex.third_singular("watch"), "watches");
  EXPECT_EQ(lex.third_singular("cry"), "cries");
  EXPECT_EQ(lex.third_singular("have"), "has");
  EXPECT_EQ(lex.gerund("lie"), "lying");
  EXPECT_EQ(lex.gerund("make"), "making");
  EXPECT_EQ(lex.gerund("see"), "seeing");
  EXPECT_EQ(lex.gerund("run"), "running");
  EXPECT_EQ(lex.plural("child"), "children");
  EXPECT_EQ(lex.plural("box"), "boxes");
  EXPECT_EQ(lex.plural("day"), "days");
}

TEST(Lexicon, Extension) {
  const auto lex = InflectionLexicon::parse("past\tgo\twended\n3sg\tfoo\tfooz\nplural\tcactus\tcacti\npp\tgo\twent\n");
  EXPECT_EQ(lex.past_forms("go"), std::vector<std::string>{"wended"});
  EXPECT_EQ(lex.third_singular("foo"), "fooz");
  EXPECT_EQ(lex.plural("cactus"), "cacti");
  EXPECT_EQ(lex.participle("go"), "went");
  EXPECT_THROW(InflectionLexicon::parse("past\tgo\n"), Error);
  EXPECT_THROW(InflectionLexicon::parse("future\tgo\twill go\n"), Error);
}

TEST(Evaluate, GoldAgainstItself) {
  const auto gold = corpus(support::read_data("eval_gold.txt"));
  const auto r = evaluate(gold, gold, parse_annotations(support::read_data("eval_ann.tsv")));
  EXPECT_EQ(r.n_sentences, 3u);
  EXPECT_NEAR(*r.noun_match, 100.0, 1e-9);
  EXPECT_NEAR(*r.verb_match, 100.0, 1e-9);
  EXPECT_NEAR(*r.subj_verb_agreement, 100.0, 1e-9);
  EXPECT_NEAR(*r.tense_match, 100.0, 1e-9);
  EXPECT_NEAR(r.non_repetition, (100.0 + 100.0 + 600.0 / 7.0) / 3.0, 1e-9);
  EXPECT_NEAR(r.bleu4, 100.0, 1e-9);
  EXPECT_NEAR(r.bleu1, 100.0, 1e-9);
  EXPECT_EQ(r.tense_coverage, 3u);
}

TEST(Evaluate, DegradedHypothesesScoreLower) {
  const auto gold = corpus(support::read_data("eval_gold.txt"));
  const auto hyp = corpus("Solve problem be difficult .\nWho do Fatma think write book .\nMan give child ball .\n");
  const auto r = evaluate(hyp, gold, parse_annotations(support::read_data("eval_ann.tsv")));
  EXPECT_LT(r.bleu4, 100.0);
  EXPECT_LT(*r.tense_match, 100.0);
  EXPECT_NEAR(*r.noun_match, 100.0, 1e-9);
  EXPECT_NEAR(*r.verb_match, 100.0, 1e-9);
  for (double v : {*r.noun_match, *r.verb_match, *r.subj_verb_agreement, *r.tense_match, r.non_repetition, r.bleu4, r.bleu1}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 100.0);
  }
}

TEST(Evaluate, Errors) {
  const auto gold = corpus(support::read_data("eval_gold.txt"));
  EXPECT_THROW(evaluate({gold[0]}, gold, {}), Error);
  std::map<std::size_t, EvalAnnotation> a{{4, ann("nouns=x")}};
  EXPECT_THROW(evaluate(gold, gold, a), Error);
}

TEST(Evaluate, FormatReport) {
  EvalReport r;
  r.n_sentences = 2;
  r.bleu4 = 12.345;
  const auto s = format_report(r);
  EXPECT_NE(s.find("noun_match=n/a\n"), std::string::npos);
  EXPECT_NE(s.find("bleu4=12.35\n"), std::string::npos) << s;
  EXPECT_NE(s.find("non_repetition=100.00\n"), std::string::npos);
}
