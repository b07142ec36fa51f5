#include "syngauntlet/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "syngauntlet/error.hpp"

namespace syngauntlet {

std::size_t NgramModel::KeyHash::operator()(const std::vector<TokenId>& key) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (TokenId t : key) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(t));
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> NgramModel::vocabulary() const {
  std::vector<std::string> out;
  out.reserve(words_.size() - 1);
  for (std::size_t id = 0; id < words_.size(); ++id) {
    if (static_cast<TokenId>(id) != kBos) out.push_back(words_[id]);
  }
  return out;
}

NgramModel::TokenId NgramModel::lookup(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? kUnk : it->second;
}

std::uint64_t NgramModel::ngram_count(std::span<const TokenId> history, TokenId word) const {
  if (history.empty()) {
    return (word >= 0 && static_cast<std::size_t>(word) < unigram_.size()) ? unigram_[word] : 0;
  }
  std::vector<TokenId> key(history.begin(), history.end());
  key.push_back(word);
  auto it = ngrams_.find(key);
  return it == ngrams_.end() ? 0 : it->second;
}

std::uint64_t NgramModel::context_count(std::span<const TokenId> history) const {
  if (history.empty()) return total_;
  auto it = contexts_.find(std::vector<TokenId>(history.begin(), history.end()));
  return it == contexts_.end() ? 0 : it->second;
}

double NgramModel::prob(std::span<const TokenId> history, TokenId word) const {
  if (history.size() > static_cast<std::size_t>(order_ - 1)) {
    history = history.subspan(history.size() - static_cast<std::size_t>(order_ - 1));
  }
  const double v = static_cast<double>(vocabulary_size());
  double p = weights_[0] * (static_cast<double>(ngram_count({}, word)) + 1.0) / (static_cast<double>(total_) + v);
  for (int k = 2; k <= order_; ++k) {
    const std::size_t need = static_cast<std::size_t>(k - 1);
    if (history.size() < need) break;
    const auto h = history.subspan(history.size() - need);
    const std::uint64_t ctx = context_count(h);
    if (ctx == 0) continue;
    p += weights_[k - 1] * static_cast<double>(ngram_count(h, word)) / static_cast<double>(ctx);
  }
  return p;
}

double NgramModel::prob(std::span<const std::string> history, std::string_view word) const {
  std::vector<TokenId> ids;
  ids.reserve(history.size());
  for (const auto& w : history) ids.push_back(lookup(w));
  return prob(ids, lookup(word));
}

NgramModel train_ngram(const std::vector<std::string>& corpus, int order, const std::vector<double>& weights) {
  if (order < 1) throw NgramError(NgramError::Kind::BadWeights, "order must be at least 1");
  if (weights.size() != static_cast<std::size_t>(order)) {
    throw NgramError(NgramError::Kind::BadWeights, "expected " + std::to_string(order) + " weights, got " +
                                                       std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw NgramError(NgramError::Kind::BadWeights, "weights must be finite and non-negative");
    }
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NgramError(NgramError::Kind::BadWeights, "weights sum to " + std::to_string(sum) + ", not 1");
  }

  std::vector<std::vector<std::string>> sentences;
  for (const std::string& line : corpus) {
    std::vector<std::string> words;
    for (auto& t : word_tokenize(line)) words.push_back(std::move(t.text));
    if (!words.empty()) sentences.push_back(std::move(words));
  }
  if (sentences.empty()) throw NgramError(NgramError::Kind::EmptyCorpus, "corpus has no tokens");

  NgramModel model;
  model.order_ = order;
  model.weights_.assign(weights.rbegin(), weights.rend());
  model.words_ = {std::string(NgramModel::kUnkText), std::string(NgramModel::kBosText)};
  model.ids_[model.words_[0]] = NgramModel::kUnk;
  model.ids_[model.words_[1]] = NgramModel::kBos;

  // Ids follow first occurrence so the model does not depend on hashing.
  for (const auto& sentence : sentences) {
    for (const auto& w : sentence) {
      if (!model.ids_.contains(w)) {
        model.ids_[w] = static_cast<NgramModel::TokenId>(model.words_.size());
        model.words_.push_back(w);
      }
    }
  }
  model.unigram_.assign(model.words_.size(), 0);

  const std::size_t pad = static_cast<std::size_t>(order - 1);
  for (const auto& sentence : sentences) {
    std::vector<NgramModel::TokenId> seq(pad, NgramModel::kBos);
    for (const auto& w : sentence) seq.push_back(model.ids_.at(w));
    for (std::size_t i = pad; i < seq.size(); ++i) {
      ++model.unigram_[seq[i]];
      ++model.total_;
      for (std::size_t n = 1; n <= pad; ++n) {
        std::vector<NgramModel::TokenId> key(seq.begin() + static_cast<std::ptrdiff_t>(i - n),
                                             seq.begin() + static_cast<std::ptrdiff_t>(i + 1));
        ++model.ngrams_[key];
        key.pop_back();
        ++model.contexts_[key];
      }
    }
  }
  return model;
}

double ngram_prob(const NgramModel& model, std::span<const std::string> history, std::string_view word) {
  return model.prob(history, word);
}

std::vector<std::string> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

// --- NgramScorer ------------------------------------------------------------

NgramScorer::NgramScorer(NgramModel model, std::string id) : model_(std::move(model)), id_(std::move(id)) {
  if (id_.empty()) id_ = "ngram-k" + std::to_string(model_.order());
}

std::vector<ScoredToken> NgramScorer::score(std::string_view text) const {
  require_text(text);
  const auto words = word_tokenize(text);
  std::vector<NgramModel::TokenId> history(static_cast<std::size_t>(model_.order() - 1), NgramModel::kBos);
  std::vector<ScoredToken> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    const NgramModel::TokenId id = model_.lookup(w.text);
    const double p = model_.prob(history, id);
    out.push_back({w.text, w.span.start, w.span.end, quantize_bits(-std::log2(p))});
    history.push_back(id);
  }
  return out;
}

std::optional<double> NgramScorer::total_surprisal(std::string_view text) const {
  require_text(text);
  std::vector<std::string> history(static_cast<std::size_t>(model_.order() - 1), std::string(NgramModel::kBosText));
  long double total = 0.0L;
  for (const auto& w : word_tokenize(text)) {
    total -= std::log2(static_cast<long double>(ngram_prob(model_, history, w.text)));
    history.push_back(w.text);
  }
  return static_cast<double>(total);
}

}  // namespace syngauntlet
