#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "igt/igt.hpp"
#include "oracle/model1_bruteforce.hpp"
#include "support.hpp"

using namespace igt;

namespace {

ParallelCorpus toy() { return ParallelCorpus::from_lines(support::read_data("toy_src.txt"), support::read_data("toy_tgt.txt")); }

std::vector<oracle::Pair> to_oracle(const ParallelCorpus& c, bool with_null = false) {
  std::vector<oracle::Pair> out;
  for (const auto& p : c.pairs) {
    auto e = p.target;
    if (with_null) e.insert(e.begin(), std::string(null_word));
    out.emplace_back(p.source, e);
  }
  return out;
}

void expect_same(const TranslationTable& t, const oracle::TTable& o, double tol) {
  std::size_t cells = 0;
  for (const auto& [f, row] : t.rows()) cells += row.size();
  EXPECT_EQ(cells, o.size());
  for (const auto& [k, p] : o) EXPECT_NEAR(t.prob(k.first, k.second), p, tol) << k.first << "|" << k.second;
}

ParallelCorpus random_corpus(std::mt19937_64& rng, std::size_t max_len) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t vf = pick(2, 10), ve = pick(2, 10);
  ParallelCorpus c;
  const std::size_t n = pick(1, 20);
  for (std::size_t i = 0; i < n; ++i) {
    SentencePair p;
    for (std::size_t j = pick(1, max_len); j > 0; --j) p.source.push_back("f" + std::to_string(pick(0, vf - 1)));
    for (std::size_t j = pick(1, max_len); j > 0; --j) p.target.push_back("e" + std::to_string(pick(0, ve - 1)));
    c.pairs.push_back(std::move(p));
  }
  return c;
}

}  // namespace

TEST(Model1, ToyCorpusMatchesFrozenValues) {
  const auto t = train_model1(toy(), 10, false);
  ASSERT_EQ(t.perplexity_log().size(), 11u);
  EXPECT_NEAR(t.perplexity_log()[1], 2.42393630278245, 1e-9);
  EXPECT_NEAR(t.perplexity_log()[2], 2.30272417040475, 1e-9);
  EXPECT_NEAR(t.perplexity_log()[10], 2.0083541653381873, 1e-9);
  EXPECT_NEAR(t.prob("buch", "book"), 0.993408533246662, 1e-9);
  EXPECT_NEAR(t.prob("das", "the"), 0.993408533246662, 1e-9);
  EXPECT_NEAR(t.prob("ein", "a"), 0.9178826634594226, 1e-9);
  EXPECT_NEAR(t.prob("haus", "house"), 0.9178826634594226, 1e-9);
  EXPECT_NEAR(t.prob("buch", "a"), 0.08211733654057751, 1e-9);
  EXPECT_NEAR(t.prob("das", "house"), 0.08211733654057751, 1e-9);
  EXPECT_NEAR(t.prob("buch", "the"), 0.002211966762865107, 1e-9);
  EXPECT_NEAR(t.prob("das", "book"), 0.002211966762865107, 1e-9);
  EXPECT_NEAR(t.prob("ein", "book"), 0.0043794999904728776, 1e-9);
  EXPECT_NEAR(t.prob("haus", "the"), 0.004379499990472879, 1e-9);
  EXPECT_EQ(t.prob("haus", "a"), 0.0);
}

TEST(Model1, ToyCorpusEarlyIterations) {
  const auto t1 = train_model1(toy(), 1, false);
  EXPECT_NEAR(t1.prob("buch", "a"), 0.5, 1e-12);
  EXPECT_NEAR(t1.prob("buch", "book"), 0.5, 1e-12);
  EXPECT_NEAR(t1.prob("buch", "the"), 0.2777777777777778, 1e-12);
  EXPECT_NEAR(t1.prob("das", "book"), 0.2777777777777778, 1e-12);
  EXPECT_NEAR(t1.prob("das", "house"), 0.5, 1e-12);
  EXPECT_NEAR(t1.prob("das", "the"), 0.5, 1e-12);
  EXPECT_NEAR(t1.prob("ein", "a"), 0.5, 1e-12);
  EXPECT_NEAR(t1.prob("ein", "book"), 0.22222222222222227, 1e-12);
  EXPECT_NEAR(t1.prob("haus", "house"), 0.5, 1e-12);
  EXPECT_NEAR(t1.prob("haus", "the"), 0.22222222222222224, 1e-12);
  const auto t2 = train_model1(toy(), 2, false);
  EXPECT_NEAR(t2.prob("buch", "book"), 0.6322188449848025, 1e-12);
  EXPECT_NEAR(t2.prob("das", "the"), 0.6322188449848025, 1e-12);
  EXPECT_NEAR(t2.prob("ein", "a"), 0.5806451612903226, 1e-12);
}

TEST(Model1, ToyCorpusMatchesBruteForceEveryIteration) {
  const auto run = oracle::train(to_oracle(toy()), 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto t = train_model1(toy(), k, false);
    expect_same(t, run.tables[k], 1e-9);
    EXPECT_NEAR(t.final_perplexity(), run.perplexity[k], 1e-9);
  }
}

TEST(Model1, NullVariantMatchesBruteForce) {
  const auto run = oracle::train(to_oracle(toy(), true), 5);
  const auto t = train_model1(toy(), 5, true);
  EXPECT_TRUE(t.has_null());
  expect_same(t, run.tables[5], 1e-9);
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_NEAR(t.perplexity_log()[k], run.perplexity[k], 1e-9);
}

TEST(Model1, RandomCorporaMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_corpus(rng, 4);
    const bool with_null = trial % 2 == 1;
    const auto run = oracle::train(to_oracle(c, with_null), 3);
    const auto t = train_model1(c, 3, with_null);
    expect_same(t, run.tables[3], 1e-9);
  }
}

TEST(Model1, ParametersNormalizedPerTargetWord) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = train_model1(random_corpus(rng, 8), 5, trial % 2 == 0);
    std::map<std::string, double> sums;
    for (const auto& [f, row] : t.rows())
      for (const auto& [e, p] : row) {
        EXPECT_GE(p, 0.0);
        sums[e] += p;
      }
    for (const auto& [e, s] : sums) EXPECT_NEAR(s, 1.0, 1e-9) << e;
  }
}

TEST(Model1, PerplexityNeverIncreases) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = train_model1(random_corpus(rng, 8), 10, trial % 3 == 0);
    const auto& log = t.perplexity_log();
    ASSERT_EQ(log.size(), 11u);
    for (std::size_t k = 1; k < log.size(); ++k) EXPECT_LE(log[k], log[k - 1] + 1e-9) << "trial " << trial;
  }
}

TEST(Model1, Lowercases) {
  const auto t = train_model1(ParallelCorpus::from_lines("Das Haus\n", "The HOUSE\n"), 1, false);
  EXPECT_GT(t.prob("das", "the"), 0.0);
  EXPECT_EQ(t.prob("Das", "The"), 0.0);
}

TEST(Model1, Errors) {
  try {
    ParallelCorpus::from_lines("a\nb\n", "x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  EXPECT_THROW(train_model1(ParallelCorpus{}, 5, false), Error);
  try {
    ParallelCorpus::from_lines("a\n\n", "x\ny\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyCorpus);
  }
}

TEST(Dictionary, ToyCorpus) {
  const auto d = extract_dictionary(train_model1(toy(), 10, false), 0.5);
  ASSERT_NE(d.lookup("das"), nullptr);
  EXPECT_EQ(d.lookup("das")->target, "the");
  EXPECT_EQ(d.lookup("Buch")->target, "book");
  EXPECT_EQ(d.lookup("ein")->target, "a");
  EXPECT_EQ(d.lookup("haus")->target, "house");
  EXPECT_EQ(d.size(), 4u);
  EXPECT_TRUE(extract_dictionary(train_model1(toy(), 10, false), 0.995).empty());
}

TEST(Dictionary, NullIsNeverATranslation) {
  const auto d = extract_dictionary(train_model1(toy(), 10, true), 0.0);
  for (const auto& [f, e] : d.entries()) EXPECT_NE(e.target, null_word);
}

TEST(Dictionary, RoundTrip) {
  const auto d = extract_dictionary(train_model1(toy(), 10, false), 0.0);
  std::stringstream ss;
  d.write(ss);
  const auto back = LemmaDictionary::read(ss);
  ASSERT_EQ(back.size(), d.size());
  for (const auto& [f, e] : d.entries()) {
    EXPECT_EQ(back.lookup(f)->target, e.target);
    EXPECT_NEAR(back.lookup(f)->probability, e.probability, 1e-9);
  }
}

TEST(Dictionary, ReadsTwoColumnFiles) {
  std::istringstream in(support::read_data("pair_dict.tsv"));
  const auto d = LemmaDictionary::read(in);
  EXPECT_EQ(d.size(), 6u);
  EXPECT_EQ(d.lookup("gör")->target, "see");
  EXPECT_EQ(d.lookup("gör")->probability, 1.0);
  std::istringstream bad("just-one-column\n");
  EXPECT_THROW(LemmaDictionary::read(bad), Error);
}

TEST(Dictionary, InsertKeepsBest) {
  LemmaDictionary d;
  d.insert("x", {"b", 0.4});
  d.insert("X", {"c", 0.6});
  d.insert("x", {"a", 0.6});
  EXPECT_EQ(d.lookup("x")->target, "a");
}

TEST(TranslationTableIo, RoundTripIsExact) {
  const auto t = train_model1(toy(), 10, true);
  std::stringstream ss;
  t.write(ss);
  const auto back = TranslationTable::read(ss);
  EXPECT_TRUE(back.has_null());
  for (const auto& [f, row] : t.rows())
    for (const auto& [e, p] : row) EXPECT_EQ(back.prob(f, e), p);
  std::stringstream again;
  back.write(again);
  std::stringstream first;
  t.write(first);
  EXPECT_EQ(again.str(), first.str());
}

TEST(AlignPair, ToyCorpus) {
  const auto t = train_model1(toy(), 10, false);
  const auto links = align_pair({"das", "Haus"}, {"the", "house"}, t);
  ASSERT_EQ(links.size(), 2u);
  EXPECT_EQ(links[0], (AlignmentLink{0, 0}));
  EXPECT_EQ(links[1], (AlignmentLink{1, 1}));
}

TEST(AlignPair, UnseenWordsGoToNull) {
  const auto t = train_model1(toy(), 10, true);
  const auto links = align_pair({"zebra"}, {"the"}, t);
  EXPECT_EQ(links[0].target, std::nullopt);
}
