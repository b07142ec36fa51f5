#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/count_oracle.hpp"
#include "support/test_util.hpp"
#include "syngauntlet/error.hpp"
#include "syngauntlet/ngram.hpp"
#include "syngauntlet/scoring.hpp"

using namespace syngauntlet;
using syngauntlet::testing::CountOracle;
using syngauntlet::testing::split_words;

namespace {

std::vector<std::string> toy_corpus() { return read_corpus_file(syngauntlet::testing::data_dir() + "/corpus/es_toy.txt"); }

}  // namespace

TEST(WordTokenize, SplitsPunctuationAndKeepsOffsetsInCodePoints) {
  const auto t = word_tokenize("¿Ha comido Juan?");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].text, "¿");
  EXPECT_EQ(t[0].span, (CharSpan{0, 1}));
  EXPECT_EQ(t[1].text, "Ha");
  EXPECT_EQ(t[1].span, (CharSpan{1, 3}));
  EXPECT_EQ(t[3].text, "Juan");
  EXPECT_EQ(t[3].span, (CharSpan{11, 15}));
  EXPECT_EQ(t[4].text, "?");
  EXPECT_EQ(word_tokenize("niña")[0].span, (CharSpan{0, 4}));
}

TEST(Uniform, ThreeBitsPerTokenAtVocabularyEight) {
  UniformScorer s(8);
  const auto t = s.score("a b c");
  ASSERT_EQ(t.size(), 3u);
  for (const auto& tok : t) EXPECT_EQ(tok.surprisal_bits, 3.0);
  EXPECT_EQ(*s.total_surprisal("a b c"), 9.0);
}

TEST(Uniform, EmptyTextRejected) {
  UniformScorer s(8);
  try {
    s.score("  ");
    FAIL();
  } catch (const ScorerError& e) {
    EXPECT_EQ(e.kind(), ScorerError::Kind::EmptyText);
  }
}

TEST(Quantize, GridAndBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double q = quantize_bits(x);
    EXPECT_LE(std::abs(q - x), kSurprisalQuantum / 2);
    EXPECT_EQ(std::ldexp(q, 36), std::round(std::ldexp(q, 36)));
  }
  EXPECT_EQ(quantize_bits(3.0), 3.0);
}

TEST(Lookup, ConflictingCostRejected) {
  LookupScorer s("x");
  s.add("a b", 1.0);
  s.add("a b", 1.0);
  EXPECT_THROW(s.add("a b", 2.0), std::invalid_argument);
  EXPECT_EQ(s.score("a b")[1].surprisal_bits, 1.0);
  EXPECT_THROW(s.score("c"), ScorerError);
}

TEST(Scaled, MultipliesTokens) {
  auto inner = std::make_shared<UniformScorer>(8);
  ScaledScorer s(inner, 0.5);
  for (const auto& t : s.score("a b")) EXPECT_EQ(t.surprisal_bits, 1.5);
}

TEST(Ngram, HandCountsOnSmallCorpus) {
  const auto m = train_ngram({"a b .", "a c ."}, 2, {0.7, 0.3});
  EXPECT_EQ(m.vocabulary_size(), 5u);
  EXPECT_EQ(m.token_count(), 6u);
  const auto id = [&](const char* w) { return m.lookup(w); };
  const auto bigram = [&](NgramModel::TokenId a, NgramModel::TokenId b) {
    const NgramModel::TokenId h[] = {a};
    return m.ngram_count(h, b);
  };
  EXPECT_EQ(bigram(id("a"), id("b")), 1u);
  EXPECT_EQ(bigram(id("a"), id("c")), 1u);
  EXPECT_EQ(bigram(id("b"), id(".")), 1u);
  EXPECT_EQ(bigram(id("c"), id(".")), 1u);
  EXPECT_EQ(bigram(NgramModel::kBos, id("a")), 2u);
  const std::string h[] = {"a"};
  EXPECT_NEAR(m.prob(std::span<const std::string>(h), "b"), 0.7 * 0.5 + 0.3 * (2.0 / 11.0), 1e-15);
}

TEST(Ngram, BadWeightsAndEmptyCorpus) {
  auto kind = [](auto f) -> std::optional<NgramError::Kind> {
    try {
      f();
    } catch (const NgramError& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  EXPECT_EQ(kind([] { train_ngram({"a b"}, 2, {0.5, 0.6}); }), NgramError::Kind::BadWeights);
  EXPECT_EQ(kind([] { train_ngram({"a b"}, 2, {1.0}); }), NgramError::Kind::BadWeights);
  EXPECT_EQ(kind([] { train_ngram({"a b"}, 2, {1.2, -0.2}); }), NgramError::Kind::BadWeights);
  EXPECT_EQ(kind([] { train_ngram({"  ", ""}, 3, kDefaultNgramWeights); }), NgramError::Kind::EmptyCorpus);
}

TEST(Ngram, UnknownWordsShareUnkMass) {
  const auto m = train_ngram({"a b .", "a c ."}, 2, {0.7, 0.3});
  const std::string h[] = {"a"};
  EXPECT_EQ(m.lookup("zzz"), NgramModel::kUnk);
  EXPECT_DOUBLE_EQ(m.prob(std::span<const std::string>(h), "zzz"), 0.3 * 1.0 / 11.0);
  EXPECT_EQ(m.prob(std::span<const std::string>(h), "zzz"), m.prob(std::span<const std::string>(h), "qqq"));
}

TEST(Ngram, MatchesBruteForceCountsOnToyCorpus) {
  const auto corpus = toy_corpus();
  ASSERT_LE(corpus.size(), 50u);
  const auto m = train_ngram(corpus, 3, kDefaultNgramWeights);
  const CountOracle oracle(corpus, 3, kDefaultNgramWeights);
  EXPECT_EQ(m.vocabulary_size(), oracle.types.size() + 1);
  EXPECT_EQ(static_cast<long>(m.token_count()), oracle.tokens);

  std::vector<std::string> probes = corpus;
  probes.push_back("El perro duerme en la casa verde.");
  probes.push_back("Los xilófonos comen pan.");
  std::size_t checked = 0;
  for (const auto& line : probes) {
    std::vector<std::string> history{"<s>", "<s>"};
    for (const auto& w : split_words(line)) {
      const double got = m.prob(std::span<const std::string>(history), w);
      const double want = oracle.prob(history, w);
      EXPECT_NEAR(got, want, 1e-12) << line << " / " << w;
      history.push_back(w);
      ++checked;
    }
  }
  EXPECT_GT(checked, 200u);
}

TEST(Ngram, DistributionSumsToOneForSeenHistories) {
  const auto corpus = toy_corpus();
  const auto m = train_ngram(corpus, 3, kDefaultNgramWeights);
  const auto vocab = m.vocabulary();
  std::size_t histories = 0;
  for (const auto& line : corpus) {
    std::vector<std::string> history{"<s>", "<s>"};
    for (const auto& w : split_words(line)) {
      double sum = 0.0;
      for (const auto& v : vocab) sum += m.prob(std::span<const std::string>(history), v);
      EXPECT_NEAR(sum, 1.0, 1e-9);
      history.push_back(w);
      ++histories;
    }
  }
  EXPECT_GT(histories, 100u);
}

TEST(Ngram, ScorerTotalsAgree) {
  NgramScorer s(train_ngram(toy_corpus(), 3, kDefaultNgramWeights));
  EXPECT_EQ(s.id(), "ngram-k3");
  for (const char* text : {"El perro come pan.", "Las niñas leen un libro verde.", "¿Qué xyz?"}) {
    const auto toks = s.score(text);
    double sum = 0.0;
    for (const auto& t : toks) sum += t.surprisal_bits;
    EXPECT_NEAR(sum, *s.total_surprisal(text), 1e-9 * sum);
    EXPECT_TRUE(describe_cover_problem(text, [&] {
                  std::vector<CharSpan> spans;
                  for (const auto& t : toks) spans.push_back(t.span());
                  return spans;
                }()).empty());
  }
}

TEST(Cover, DescribesProblems) {
  const CharSpan ok[] = {{0, 1}, {2, 3}};
  EXPECT_TRUE(describe_cover_problem("a b", ok).empty());
  const CharSpan overlap[] = {{0, 2}, {1, 3}};
  EXPECT_FALSE(describe_cover_problem("a b", overlap).empty());
  const CharSpan gap[] = {{0, 1}};
  EXPECT_FALSE(describe_cover_problem("a b", gap).empty());
  const CharSpan out[] = {{0, 1}, {2, 4}};
  EXPECT_FALSE(describe_cover_problem("a b", out).empty());
}
