#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "syngauntlet/scoring.hpp"

// Left-to-right scoring with a masked language model.
//
// A sentence of N service tokens is laid out as N+2 slots: a begin-of-sentence
// marker, N token slots, and a final mask standing in for end-of-sentence.
// Step i (1..N) reveals tokens 1..i-1, keeps slots i..N+1 masked, and reads the
// probability of the original token i at slot i. Only the N token surprisals
// are reported; the end-of-sentence slot is never scored.
namespace syngauntlet {

using TokenId = std::int64_t;

/// Special slot values in a FillQuery sequence.
inline constexpr TokenId kBosSlot = -1;
inline constexpr TokenId kMaskSlot = -2;

struct ServiceToken {
  TokenId id = 0;
  std::string text;
  std::size_t char_start = 0;  // scalar-value offsets into the sentence
  std::size_t char_end = 0;
};

struct FillQuery {
  std::vector<TokenId> slots;  // slot 0 is kBosSlot
  std::size_t position = 0;    // slot whose distribution is requested

  bool operator==(const FillQuery&) const = default;
};

/// A masked LM seen through two calls: tokenization with offsets, and the
/// distribution at one masked slot.
class FillService {
 public:
  virtual ~FillService() = default;

  virtual std::string model_id() const = 0;
  virtual std::size_t vocabulary_size() const = 0;

  virtual std::vector<ServiceToken> tokenize(std::string_view text) const = 0;

  /// Probability of every vocabulary id at `query.position`.
  virtual std::vector<double> fill(const FillQuery& query) const = 0;
};

/// Query issued at step `step` (1-based) for a sentence of `ids.size()` tokens.
FillQuery make_fill_query(const std::vector<TokenId>& ids, std::size_t step);

/// Runs the reveal loop. Steps for one sentence are issued strictly in order.
/// Throws ScorerError: EmptyText, TokenizationMismatch when the service's
/// offsets do not cover the text, ProtocolViolation on malformed
/// distributions or zero probability for the original token.
std::vector<ScoredToken> sequential_mlm_score(const FillService& fill, std::string_view text);

/// Scorer backed by an in-process FillService.
class MlmScorer final : public Scorer {
 public:
  explicit MlmScorer(std::shared_ptr<const FillService> fill, std::string id = {});

  const std::string& id() const noexcept override { return id_; }
  std::vector<ScoredToken> score(std::string_view text) const override;

 private:
  std::shared_ptr<const FillService> fill_;
  std::string id_;
};

}  // namespace syngauntlet
