#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syngauntlet/scoring.hpp"

namespace syngauntlet {

/// Interpolated n-gram model with an add-one smoothed unigram floor:
///
///   p(w | h) = sum_k weight_k * p_k(w | last k-1 tokens of h)
///
/// where p_1 = (c(w) + 1) / (N + |V|) over the vocabulary including <unk>, and
/// p_k for k > 1 is c(h_k, w) / c(h_k), taken as 0 when c(h_k) = 0. Sentences
/// are padded with order-1 <s> symbols; <s> is never predicted.
class NgramModel {
 public:
  using TokenId = std::int32_t;
  static constexpr TokenId kUnk = 0;
  static constexpr TokenId kBos = 1;
  static constexpr std::string_view kUnkText = "<unk>";
  static constexpr std::string_view kBosText = "<s>";

  int order() const noexcept { return order_; }

  /// weights()[k-1] multiplies the order-k estimate.
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Observed types plus <unk>; <s> is not part of it.
  std::size_t vocabulary_size() const noexcept { return words_.size() - 1; }
  std::uint64_t token_count() const noexcept { return total_; }

  /// Vocabulary entries (including "<unk>") in id order.
  std::vector<std::string> vocabulary() const;

  /// Id of `word`, kUnk when unseen. "<s>" maps to kBos.
  TokenId lookup(std::string_view word) const;

  /// Count of the n-gram history..word (history may be empty for unigrams).
  std::uint64_t ngram_count(std::span<const TokenId> history, TokenId word) const;
  /// Number of times `history` was followed by a predicted token.
  std::uint64_t context_count(std::span<const TokenId> history) const;

  double prob(std::span<const TokenId> history, TokenId word) const;
  double prob(std::span<const std::string> history, std::string_view word) const;

 private:
  friend NgramModel train_ngram(const std::vector<std::string>&, int, const std::vector<double>&);

  struct KeyHash {
    std::size_t operator()(const std::vector<TokenId>& key) const noexcept;
  };

  int order_ = 1;
  std::vector<double> weights_;
  std::vector<std::string> words_;  // index = id
  std::unordered_map<std::string, TokenId> ids_;
  std::vector<std::uint64_t> unigram_;
  std::uint64_t total_ = 0;
  // key = history tokens followed by the predicted token
  std::unordered_map<std::vector<TokenId>, std::uint64_t, KeyHash> ngrams_;
  std::unordered_map<std::vector<TokenId>, std::uint64_t, KeyHash> contexts_;
};

/// Weights are listed highest order first, e.g. {0.6, 0.3, 0.1} for a
/// trigram model. Sentences are tokenized with word_tokenize.
/// Throws NgramError (EmptyCorpus, BadWeights).
NgramModel train_ngram(const std::vector<std::string>& corpus, int order, const std::vector<double>& weights);

/// Default trigram weights, highest order first.
inline const std::vector<double> kDefaultNgramWeights = {0.6, 0.3, 0.1};

/// Probability of `word` after `history`. Unknown words map to <unk>; only the
/// last order-1 history tokens are used.
double ngram_prob(const NgramModel& model, std::span<const std::string> history, std::string_view word);

/// One line per sentence; blank lines are skipped.
std::vector<std::string> read_corpus_file(const std::string& path);

class NgramScorer final : public Scorer {
 public:
  explicit NgramScorer(NgramModel model, std::string id = {});

  const std::string& id() const noexcept override { return id_; }
  std::vector<ScoredToken> score(std::string_view text) const override;
  /// Sum of −log2 p accumulated in extended precision straight from the model.
  std::optional<double> total_surprisal(std::string_view text) const override;

  const NgramModel& model() const noexcept { return model_; }

 private:
  NgramModel model_;
  std::string id_;
};

}  // namespace syngauntlet
