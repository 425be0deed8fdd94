#include <gtest/gtest.h>

#include <random>

#include "igt/igt.hpp"

using namespace igt;

TEST(LanguageTag, AcceptsThreeLowercaseLetters) {
  EXPECT_EQ(LanguageTag("blu").code(), "blu");
  EXPECT_TRUE(LanguageTag::is_valid("arp"));
}

TEST(LanguageTag, RejectsOtherShapes) {
  for (const char* bad : {"", "bl", "blue", "BLU", "b1u", "tü"}) {
    try {
      LanguageTag t(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadLanguageTag) << bad;
    }
  }
}

TEST(GlossTokenizer, SplitsMorphsAndTrailingPunct) {
  const auto g = tokenize_gloss("Woman.NOM dance do-AOR.3.SG.");
  ASSERT_EQ(g.tokens.size(), 4u);
  EXPECT_EQ(g.tokens[0].morphs.size(), 2u);
  EXPECT_EQ(g.tokens[0].morphs[0].kind, MorphKind::Lemma);
  EXPECT_EQ(g.tokens[0].morphs[1].kind, MorphKind::Label);
  EXPECT_EQ(g.tokens[0].morphs[1].joiner, Joiner::Period);
  EXPECT_EQ(g.tokens[1].morphs.size(), 1u);
  const auto& verb = g.tokens[2].morphs;
  ASSERT_EQ(verb.size(), 4u);
  EXPECT_EQ(verb[0].text, "do");
  EXPECT_EQ(verb[1].text, "AOR");
  EXPECT_EQ(verb[1].joiner, Joiner::Hyphen);
  EXPECT_EQ(verb[2].text, "3");
  EXPECT_EQ(verb[3].text, "SG");
  EXPECT_TRUE(g.tokens[3].is_punct());
  EXPECT_TRUE(g.tokens[3].glued);
  EXPECT_EQ(g.render(), "Woman.NOM dance do-AOR.3.SG.");
}

TEST(GlossTokenizer, PlainWordIsOneLemma) {
  const auto g = tokenize_gloss("hello");
  ASSERT_EQ(g.tokens.size(), 1u);
  ASSERT_EQ(g.tokens[0].morphs.size(), 1u);
  EXPECT_EQ(g.tokens[0].morphs[0].kind, MorphKind::Lemma);
}

TEST(GlossTokenizer, WordInitialCompositeIsLabel) {
  const auto g = tokenize_gloss("3SG always praise 3SG.");
  ASSERT_EQ(g.tokens.size(), 5u);
  EXPECT_EQ(g.tokens[0].morphs[0].kind, MorphKind::Label);
  EXPECT_EQ(g.tokens[1].morphs[0].kind, MorphKind::Lemma);
  EXPECT_EQ(g.tokens[3].morphs[0].kind, MorphKind::Label);
}

TEST(GlossTokenizer, CapitalIPronounStaysLemma) {
  const auto g = tokenize_gloss("I saw he.DAT the film.ACC like.");
  EXPECT_EQ(g.tokens[0].morphs[0].kind, MorphKind::Lemma);
  EXPECT_EQ(g.tokens[2].morphs[1].text, "DAT");
}

TEST(GlossTokenizer, MixedCaseRegistryLabels) {
  const auto g = tokenize_gloss("admire-Progr.-Rep.Past.");
  const auto& m = g.tokens[0].morphs;
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[1].text, "Progr.");
  EXPECT_EQ(m[1].kind, MorphKind::Label);
  EXPECT_EQ(m[2].text, "Rep");
  EXPECT_EQ(m[3].text, "Past");
  EXPECT_EQ(m[3].kind, MorphKind::Label);
  EXPECT_EQ(g.render(), "admire-Progr.-Rep.Past.");
}

TEST(GlossTokenizer, EmptyLineIsAnError) {
  try {
    tokenize_gloss("   ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyLine);
  }
}

TEST(GlossTokenizer, RoundTripRendersNormalizedWhitespace) {
  for (const char* s : {"Woman.NOM dance do-AOR.3.SG.", "  3SG   always praise 3SG. ", "Man.NOM woman-ACC see-PST.3.SG.",
                        "Ahmet self-3.sg-ACC very admire-Progr.-Rep.Past.", "he=CL go-FUT ?"}) {
    EXPECT_EQ(tokenize_gloss(s).render(), text::normalize_whitespace(s)) << s;
  }
}

TEST(GlossTokenizer, RandomLinesRoundTrip) {
  // gloss-shaped lines from the record generator
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed);
    std::string line;
    const char* pieces[] = {"abc", "NOM", "-", ".", "=", "3SG", "Xy", "dog", "PST"};
    std::size_t words = 1 + rng() % 6;
    for (std::size_t w = 0; w < words; ++w) {
      if (w) line += ' ';
      line += pieces[rng() % 2 == 0 ? 0 : 6 + rng() % 2];
      for (std::size_t k = rng() % 3; k > 0; --k) line += std::string(pieces[2 + rng() % 3]) + pieces[1 + (rng() % 2) * 4];
    }
    const auto g = tokenize_gloss(line);
    bool opaque = false;
    for (const auto& t : g.tokens)
      for (const auto& m : t.morphs) opaque = opaque || m.opaque;
    if (!opaque) {
      EXPECT_EQ(g.render(), text::normalize_whitespace(line)) << line;
    }
  }
}

TEST(GlossLine, SpacedRenderings) {
  const auto g = tokenize_gloss("Woman.NOM dance do-AOR.3.SG.");
  EXPECT_EQ(g.render_spaced(), "Woman.NOM dance do-AOR.3.SG .");
  EXPECT_EQ(g.render_spaced(true), "Woman .NOM dance do -AOR .3 .SG .");
}

TEST(IgtRecord, CheckRecordRequiresContent) {
  IgtRecord r;
  r.id = "x";
  r.lang = LanguageTag("tur");
  EXPECT_THROW(check_record(r), Error);
  r.target_text = "I am thirsty";
  EXPECT_NO_THROW(check_record(r));
}

TEST(IgtRecord, GlossTokenCountsMustAgree) {
  IgtRecord r;
  r.id = "x";
  r.lang = LanguageTag("tur");
  r.gloss_src = tokenize_gloss("Adam.NOM kadin-ACC gör-AOR.3.SG.");
  r.gloss_tgt = tokenize_gloss("Man.NOM woman-ACC see-PST.3.SG.", LemmaSide::Target);
  EXPECT_NO_THROW(check_record(r));
  r.gloss_tgt = tokenize_gloss("Man.NOM woman-ACC see-PST.3.SG extra.", LemmaSide::Target);
  try {
    check_record(r, ErrorCode::TokenCountMismatch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TokenCountMismatch);
  }
}
