#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syngauntlet/suite.hpp"

namespace syngauntlet {

/// A scorer token: its text, its half-open character span in the scored
/// sentence, and −log2 of the probability the model gave it.
struct ScoredToken {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  double surprisal_bits = 0.0;

  CharSpan span() const noexcept { return {char_start, char_end}; }
  bool operator==(const ScoredToken&) const = default;
};

/// Token surprisals are stored on a dyadic grid of 2^-36 bits. Sums of grid
/// values below 2^17 bits are exact in double precision, so region totals add
/// up to sentence totals bit for bit regardless of summation order. The
/// rounding error is at most 2^-37 bits per token.
inline constexpr double kSurprisalQuantum = 1.0 / 68719476736.0;  // 2^-36
double quantize_bits(double bits);

/// Contract shared by every scorer. Implementations must be safe to call from
/// several threads at once.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual const std::string& id() const noexcept = 0;

  /// Ordered, non-overlapping tokens covering every non-whitespace character
  /// of `text` exactly once. Throws ScorerError (EmptyText when `text` is
  /// blank).
  virtual std::vector<ScoredToken> score(std::string_view text) const = 0;

  /// Whole-sentence surprisal computed without going through score(), where
  /// the scorer has such a route.
  virtual std::optional<double> total_surprisal(std::string_view /*text*/) const { return std::nullopt; }
};

// --- word tokenizer ---------------------------------------------------------

struct WordToken {
  std::string text;
  CharSpan span;
};

/// Maximal runs of letters/digits form one token; every other non-space
/// character is a token of its own. No case folding.
std::vector<WordToken> word_tokenize(std::string_view text);

/// Throws ScorerError(EmptyText) when `text` has no non-space character.
void require_text(std::string_view text);

/// Checks that spans are non-empty, ordered, non-overlapping, inside `text`,
/// and cover every non-space character. Returns an empty string when they do,
/// otherwise a description of the first problem.
std::string describe_cover_problem(std::string_view text, std::span<const CharSpan> spans);

// --- simple scorers ---------------------------------------------------------

/// Every word token costs log2(vocab_size) bits.
class UniformScorer final : public Scorer {
 public:
  explicit UniformScorer(std::size_t vocab_size, std::string id = {});

  const std::string& id() const noexcept override { return id_; }
  std::vector<ScoredToken> score(std::string_view text) const override;
  std::optional<double> total_surprisal(std::string_view text) const override;

  std::size_t vocab_size() const noexcept { return vocab_size_; }

 private:
  std::size_t vocab_size_;
  double bits_;
  std::string id_;
};

/// Test scorer that knows the sentences it will see: each word token of a
/// registered sentence costs that sentence's per-token bits. Used for the
/// constructed-oracle checks (grammatical sentences cheap, degraded ones
/// expensive). Unregistered text raises ScorerError(ProtocolViolation).
class LookupScorer final : public Scorer {
 public:
  explicit LookupScorer(std::string id) : id_(std::move(id)) {}

  /// Registers `text`; throws std::invalid_argument when it is already
  /// registered with a different cost.
  void add(const std::string& text, double bits_per_token);

  const std::string& id() const noexcept override { return id_; }
  std::vector<ScoredToken> score(std::string_view text) const override;
  std::optional<double> total_surprisal(std::string_view text) const override;

 private:
  std::string id_;
  std::map<std::string, double, std::less<>> cost_;
};

/// Multiplies another scorer's token surprisals by a positive factor (e.g.
/// ln 2 to turn bits into nats).
class ScaledScorer final : public Scorer {
 public:
  ScaledScorer(std::shared_ptr<const Scorer> inner, double factor);

  const std::string& id() const noexcept override { return id_; }
  std::vector<ScoredToken> score(std::string_view text) const override;

 private:
  std::shared_ptr<const Scorer> inner_;
  double factor_;
  std::string id_;
};

}  // namespace syngauntlet
