#include "syngauntlet/mlm.hpp"

#include <cmath>

#include "syngauntlet/error.hpp"

namespace syngauntlet {

FillQuery make_fill_query(const std::vector<TokenId>& ids, std::size_t step) {
  FillQuery q;
  q.slots.reserve(ids.size() + 2);
  q.slots.push_back(kBosSlot);
  for (std::size_t k = 1; k < step; ++k) q.slots.push_back(ids[k - 1]);
  while (q.slots.size() < ids.size() + 2) q.slots.push_back(kMaskSlot);
  q.position = step;
  return q;
}

std::vector<ScoredToken> sequential_mlm_score(const FillService& fill, std::string_view text) {
  require_text(text);
  const std::vector<ServiceToken> tokens = fill.tokenize(text);
  if (tokens.empty()) throw ScorerError(ScorerError::Kind::TokenizationMismatch, "service returned no tokens");

  std::vector<CharSpan> spans;
  spans.reserve(tokens.size());
  for (const auto& t : tokens) spans.push_back({t.char_start, t.char_end});
  if (std::string problem = describe_cover_problem(text, spans); !problem.empty()) {
    throw ScorerError(ScorerError::Kind::TokenizationMismatch, problem);
  }

  const std::size_t vocab = fill.vocabulary_size();
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.id < 0 || static_cast<std::size_t>(t.id) >= vocab) {
      throw ScorerError(ScorerError::Kind::ProtocolViolation,
                        "token '" + t.text + "' has id " + std::to_string(t.id) + " outside the vocabulary");
    }
    ids.push_back(t.id);
  }

  std::vector<ScoredToken> out;
  out.reserve(tokens.size());
  for (std::size_t step = 1; step <= tokens.size(); ++step) {
    const std::vector<double> dist = fill.fill(make_fill_query(ids, step));
    if (dist.size() != vocab) {
      throw ScorerError(ScorerError::Kind::ProtocolViolation,
                        "distribution has " + std::to_string(dist.size()) + " entries, vocabulary has " +
                            std::to_string(vocab));
    }
    const double p = dist[static_cast<std::size_t>(ids[step - 1])];
    if (!(p > 0.0) || !(p <= 1.0)) {
      throw ScorerError(ScorerError::Kind::ProtocolViolation,
                        "probability " + std::to_string(p) + " for token '" + tokens[step - 1].text + "'");
    }
    const ServiceToken& t = tokens[step - 1];
    out.push_back({t.text, t.char_start, t.char_end, quantize_bits(-std::log2(p))});
  }
  return out;
}

MlmScorer::MlmScorer(std::shared_ptr<const FillService> fill, std::string id)
    : fill_(std::move(fill)), id_(std::move(id)) {
  if (!fill_) throw std::invalid_argument("MlmScorer needs a fill service");
  if (id_.empty()) id_ = fill_->model_id();
}

std::vector<ScoredToken> MlmScorer::score(std::string_view text) const { return sequential_mlm_score(*fill_, text); }

}  // namespace syngauntlet
