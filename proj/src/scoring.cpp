#include "syngauntlet/scoring.hpp"

#include <cmath>
#include <stdexcept>

#include "syngauntlet/error.hpp"
#include "syngauntlet/utf8.hpp"

namespace syngauntlet {

double quantize_bits(double bits) { return std::nearbyint(bits / kSurprisalQuantum) * kSurprisalQuantum; }

std::vector<WordToken> word_tokenize(std::string_view text) {
  const std::u32string chars = utf8::decode(text);
  std::vector<WordToken> tokens;
  std::size_t i = 0;
  while (i < chars.size()) {
    const char32_t c = chars[i];
    if (utf8::is_space(c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (utf8::is_word_char(c)) {
      while (j < chars.size() && utf8::is_word_char(chars[j])) ++j;
    }
    tokens.push_back({utf8::encode(std::u32string_view(chars).substr(i, j - i)), {i, j}});
    i = j;
  }
  return tokens;
}

void require_text(std::string_view text) {
  std::u32string chars;
  try {
    chars = utf8::decode(text);
  } catch (const std::invalid_argument& e) {
    throw ScorerError(ScorerError::Kind::EmptyText, std::string("text is not valid UTF-8: ") + e.what());
  }
  for (char32_t c : chars) {
    if (!utf8::is_space(c)) return;
  }
  throw ScorerError(ScorerError::Kind::EmptyText, "nothing to score");
}

std::string describe_cover_problem(std::string_view text, std::span<const CharSpan> spans) {
  const std::u32string chars = utf8::decode(text);
  std::size_t covered_until = 0;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const CharSpan& s = spans[k];
    const std::string where = "token " + std::to_string(k) + " [" + std::to_string(s.start) + "," +
                              std::to_string(s.end) + ")";
    if (s.start >= s.end) return where + " is empty";
    if (s.end > chars.size()) return where + " extends past the text (" + std::to_string(chars.size()) + " chars)";
    if (s.start < covered_until) return where + " overlaps or precedes the previous token";
    for (std::size_t p = covered_until; p < s.start; ++p) {
      if (!utf8::is_space(chars[p])) return "character " + std::to_string(p) + " is not covered by any token";
    }
    covered_until = s.end;
  }
  for (std::size_t p = covered_until; p < chars.size(); ++p) {
    if (!utf8::is_space(chars[p])) return "character " + std::to_string(p) + " is not covered by any token";
  }
  return {};
}

// --- UniformScorer ----------------------------------------------------------

UniformScorer::UniformScorer(std::size_t vocab_size, std::string id)
    : vocab_size_(vocab_size), bits_(0.0), id_(std::move(id)) {
  if (vocab_size_ < 1) throw std::invalid_argument("uniform scorer needs a vocabulary of at least one type");
  bits_ = quantize_bits(std::log2(static_cast<double>(vocab_size_)));
  if (id_.empty()) id_ = "uniform-" + std::to_string(vocab_size_);
}

std::vector<ScoredToken> UniformScorer::score(std::string_view text) const {
  require_text(text);
  std::vector<ScoredToken> out;
  for (auto& t : word_tokenize(text)) out.push_back({std::move(t.text), t.span.start, t.span.end, bits_});
  return out;
}

std::optional<double> UniformScorer::total_surprisal(std::string_view text) const {
  require_text(text);
  return static_cast<double>(word_tokenize(text).size()) * std::log2(static_cast<double>(vocab_size_));
}

// --- LookupScorer -----------------------------------------------------------

void LookupScorer::add(const std::string& text, double bits_per_token) {
  auto [it, inserted] = cost_.emplace(text, bits_per_token);
  if (!inserted && it->second != bits_per_token) {
    throw std::invalid_argument("sentence '" + text + "' registered with two different costs");
  }
}

std::vector<ScoredToken> LookupScorer::score(std::string_view text) const {
  require_text(text);
  auto it = cost_.find(text);
  if (it == cost_.end()) {
    throw ScorerError(ScorerError::Kind::ProtocolViolation, "unregistered sentence '" + std::string(text) + "'");
  }
  const double bits = quantize_bits(it->second);
  std::vector<ScoredToken> out;
  for (auto& t : word_tokenize(text)) out.push_back({std::move(t.text), t.span.start, t.span.end, bits});
  return out;
}

std::optional<double> LookupScorer::total_surprisal(std::string_view text) const {
  auto it = cost_.find(text);
  if (it == cost_.end()) return std::nullopt;
  return static_cast<double>(word_tokenize(text).size()) * it->second;
}

// --- ScaledScorer -----------------------------------------------------------

ScaledScorer::ScaledScorer(std::shared_ptr<const Scorer> inner, double factor)
    : inner_(std::move(inner)), factor_(factor) {
  if (!inner_) throw std::invalid_argument("scaled scorer needs an inner scorer");
  if (!(factor_ > 0.0) || !std::isfinite(factor_)) throw std::invalid_argument("scale factor must be positive");
  id_ = inner_->id() + "*" + std::to_string(factor_);
}

std::vector<ScoredToken> ScaledScorer::score(std::string_view text) const {
  std::vector<ScoredToken> tokens = inner_->score(text);
  for (auto& t : tokens) t.surprisal_bits = quantize_bits(t.surprisal_bits * factor_);
  return tokens;
}

}  // namespace syngauntlet
