#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "syngauntlet/mlm.hpp"

namespace syngauntlet {

/// Transition table P(next | prev) read from lines of `prev next prob`;
/// lines starting with "#" are comments.
/// "<s>" is the start context; "</s>" may appear as a successor.
class BigramTable {
 public:
  static constexpr std::string_view kStart = "<s>";
  static constexpr std::string_view kEnd = "</s>";

  /// Throws std::invalid_argument on malformed lines, negative or non-finite
  /// probabilities, or rows not summing to 1 within 1e-9.
  static BigramTable parse(std::string_view text);
  static BigramTable load(const std::string& path);

  void set(const std::string& prev, const std::string& next, double prob) { rows_[prev][next] = prob; }
  double get(const std::string& prev, const std::string& next) const;

  /// Every symbol that can be a successor, sorted; ids index this list.
  std::vector<std::string> vocabulary() const;
  const std::map<std::string, std::map<std::string, double>>& rows() const noexcept { return rows_; }

  std::string serialize() const;
  void check_rows() const;

 private:
  std::map<std::string, std::map<std::string, double>> rows_;
};

/// Deterministic fill service whose distribution at the first masked slot is
/// P(· | last revealed token) from a bigram table, ignoring everything else.
/// Under the reveal loop this is exactly an autoregressive bigram model.
/// Tokenization splits on whitespace; every token must be in the vocabulary.
class MockBigramFill final : public FillService {
 public:
  explicit MockBigramFill(BigramTable table, std::string model_id = "mock-bigram");

  std::string model_id() const override { return model_id_; }
  std::size_t vocabulary_size() const override { return vocab_.size(); }
  std::vector<ServiceToken> tokenize(std::string_view text) const override;
  std::vector<double> fill(const FillQuery& query) const override;

  const BigramTable& table() const noexcept { return table_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocab_; }

 private:
  BigramTable table_;
  std::string model_id_;
  std::vector<std::string> vocab_;
  std::map<std::string, TokenId, std::less<>> ids_;
};

}  // namespace syngauntlet
