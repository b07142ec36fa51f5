#include <gtest/gtest.h>

#include <cmath>
#include <mutex>
#include <random>

#include "support/test_util.hpp"
#include "syngauntlet/error.hpp"
#include "syngauntlet/mlm.hpp"
#include "syngauntlet/mock_fill.hpp"

using namespace syngauntlet;

namespace {

std::vector<std::string> symbols(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

BigramTable random_table(const std::vector<std::string>& syms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  BigramTable t;
  std::vector<std::string> prevs = syms;
  prevs.emplace_back(BigramTable::kStart);
  for (const auto& prev : prevs) {
    std::vector<std::pair<std::string, double>> row;
    double total = 0.0;
    for (const auto& next : syms) row.push_back({next, u(rng)}), total += row.back().second;
    row.push_back({std::string(BigramTable::kEnd), u(rng)});
    total += row.back().second;
    for (auto& [next, w] : row) t.set(prev, next, w / total);
  }
  return t;
}

class RecordingFill final : public FillService {
 public:
  explicit RecordingFill(const FillService& inner) : inner_(inner) {}
  std::string model_id() const override { return inner_.model_id(); }
  std::size_t vocabulary_size() const override { return inner_.vocabulary_size(); }
  std::vector<ServiceToken> tokenize(std::string_view text) const override { return inner_.tokenize(text); }
  std::vector<double> fill(const FillQuery& q) const override {
    std::lock_guard lock(mu_);
    queries.push_back(q);
    return inner_.fill(q);
  }
  mutable std::vector<FillQuery> queries;

 private:
  const FillService& inner_;
  mutable std::mutex mu_;
};

}  // namespace

TEST(FillQuery, Layout) {
  const std::vector<TokenId> ids = {7, 8, 9};
  EXPECT_EQ(make_fill_query(ids, 1), (FillQuery{{kBosSlot, kMaskSlot, kMaskSlot, kMaskSlot, kMaskSlot}, 1}));
  EXPECT_EQ(make_fill_query(ids, 2), (FillQuery{{kBosSlot, 7, kMaskSlot, kMaskSlot, kMaskSlot}, 2}));
  EXPECT_EQ(make_fill_query(ids, 3), (FillQuery{{kBosSlot, 7, 8, kMaskSlot, kMaskSlot}, 3}));
}

TEST(Sequential, IssuesOneQueryPerTokenInOrder) {
  MockBigramFill mock(BigramTable::load(syngauntlet::testing::data_dir() + "/mock/bigram.txt"));
  RecordingFill rec(mock);
  const auto out = sequential_mlm_score(rec, "a b c");
  ASSERT_EQ(out.size(), 3u);
  ASSERT_EQ(rec.queries.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(rec.queries[k].position, k + 1);
    EXPECT_EQ(rec.queries[k].slots.size(), 5u);
    EXPECT_EQ(rec.queries[k].slots.back(), kMaskSlot);
  }
  EXPECT_NEAR(out[0].surprisal_bits, -std::log2(0.5), 1e-10);
  EXPECT_NEAR(out[1].surprisal_bits, -std::log2(0.4), 1e-10);
  EXPECT_NEAR(out[2].surprisal_bits, -std::log2(0.25), 1e-10);
  EXPECT_EQ(out[2].char_start, 4u);
}

TEST(Sequential, ChainRuleOnRandomSentences) {
  std::mt19937_64 rng(2024);
  const auto syms = symbols(10);
  const BigramTable table = random_table(syms, rng);
  MlmScorer scorer(std::make_shared<MockBigramFill>(table));
  std::uniform_int_distribution<int> len(1, 12), pick(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> words;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) words.push_back(syms[static_cast<std::size_t>(pick(rng))]);
    std::string text;
    for (const auto& w : words) text += (text.empty() ? "" : " ") + w;

    double chain = 0.0;
    std::string prev(BigramTable::kStart);
    for (const auto& w : words) chain -= std::log2(table.get(prev, w)), prev = w;

    double total = 0.0;
    for (const auto& t : scorer.score(text)) total += t.surprisal_bits;
    EXPECT_NEAR(total, chain, 1e-9 * std::max(1.0, chain)) << text;
  }
}

TEST(Sequential, Errors) {
  MockBigramFill mock(BigramTable::load(syngauntlet::testing::data_dir() + "/mock/bigram.txt"));
  auto kind = [&](std::string_view text) -> std::optional<ScorerError::Kind> {
    try {
      sequential_mlm_score(mock, text);
    } catch (const ScorerError& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  EXPECT_EQ(kind(""), ScorerError::Kind::EmptyText);
  EXPECT_EQ(kind("a zebra"), ScorerError::Kind::RequestRejected);
  EXPECT_EQ(kind("b b"), ScorerError::Kind::ProtocolViolation);  // b never follows b
}

TEST(Bigram, ParseRejectsBadRows) {
  EXPECT_THROW(BigramTable::parse("<s> a 0.5\n"), std::invalid_argument);
  EXPECT_THROW(BigramTable::parse("<s> a x\n"), std::invalid_argument);
  EXPECT_THROW(BigramTable::parse("<s> a 1.5\n<s> b -0.5\n"), std::invalid_argument);
  const auto t = BigramTable::parse("# c\n<s> a 1\na </s> 1\n");
  EXPECT_EQ(t.get("<s>", "a"), 1.0);
  EXPECT_EQ(BigramTable::parse(t.serialize()).rows(), t.rows());
}
