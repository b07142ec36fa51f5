#include "syngauntlet/mock_fill.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "syngauntlet/error.hpp"
#include "syngauntlet/utf8.hpp"

namespace syngauntlet {

BigramTable BigramTable::parse(std::string_view text) {
  BigramTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string prev, next, prob_text, extra;
    if (!(fields >> prev) || prev.front() == '#') continue;  // blank or comment line
    if (!(fields >> next >> prob_text) || (fields >> extra)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'prev next prob'");
    }
    double prob = 0.0;
    auto [ptr, ec] = std::from_chars(prob_text.data(), prob_text.data() + prob_text.size(), prob);
    if (ec != std::errc() || ptr != prob_text.data() + prob_text.size() || !std::isfinite(prob) || prob < 0.0) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad probability '" + prob_text + "'");
    }
    table.rows_[prev][next] = prob;
  }
  table.check_rows();
  return table;
}

BigramTable BigramTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open transition table '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void BigramTable::check_rows() const {
  if (rows_.empty()) throw std::invalid_argument("transition table is empty");
  for (const auto& [prev, row] : rows_) {
    double sum = 0.0;
    for (const auto& [_, p] : row) sum += p;
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("row '" + prev + "' sums to " + std::to_string(sum));
    }
  }
}

double BigramTable::get(const std::string& prev, const std::string& next) const {
  auto r = rows_.find(prev);
  if (r == rows_.end()) return 0.0;
  auto c = r->second.find(next);
  return c == r->second.end() ? 0.0 : c->second;
}

std::vector<std::string> BigramTable::vocabulary() const {
  std::set<std::string> symbols;
  for (const auto& [prev, row] : rows_) {
    if (prev != kStart) symbols.insert(prev);
    for (const auto& [next, _] : row) symbols.insert(next);
  }
  return {symbols.begin(), symbols.end()};
}

std::string BigramTable::serialize() const {
  std::string out;
  for (const auto& [prev, row] : rows_) {
    for (const auto& [next, p] : row) {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
      out += prev + " " + next + " " + std::string(buf, ptr) + "\n";
    }
  }
  return out;
}

MockBigramFill::MockBigramFill(BigramTable table, std::string model_id)
    : table_(std::move(table)), model_id_(std::move(model_id)) {
  table_.check_rows();
  vocab_ = table_.vocabulary();
  for (std::size_t i = 0; i < vocab_.size(); ++i) ids_.emplace(vocab_[i], static_cast<TokenId>(i));
}

std::vector<ServiceToken> MockBigramFill::tokenize(std::string_view text) const {
  const std::u32string chars = utf8::decode(text);
  std::vector<ServiceToken> out;
  std::size_t i = 0;
  while (i < chars.size()) {
    if (utf8::is_space(chars[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < chars.size() && !utf8::is_space(chars[j])) ++j;
    std::string symbol = utf8::encode(std::u32string_view(chars).substr(i, j - i));
    auto it = ids_.find(symbol);
    if (it == ids_.end()) {
      throw ScorerError(ScorerError::Kind::RequestRejected, "symbol '" + symbol + "' is not in the mock vocabulary");
    }
    out.push_back({it->second, std::move(symbol), i, j});
    i = j;
  }
  return out;
}

std::vector<double> MockBigramFill::fill(const FillQuery& query) const {
  const auto& slots = query.slots;
  if (slots.size() < 2 || slots.front() != kBosSlot || query.position < 1 || query.position >= slots.size()) {
    throw ScorerError(ScorerError::Kind::RequestRejected, "malformed fill query");
  }
  for (std::size_t k = 1; k < slots.size(); ++k) {
    const bool revealed = k < query.position;
    const TokenId id = slots[k];
    if (revealed && (id < 0 || static_cast<std::size_t>(id) >= vocab_.size())) {
      throw ScorerError(ScorerError::Kind::RequestRejected, "slot " + std::to_string(k) + " must hold a token id");
    }
    if (!revealed && id != kMaskSlot) {
      throw ScorerError(ScorerError::Kind::RequestRejected, "slot " + std::to_string(k) + " must be masked");
    }
  }
  const std::string prev =
      query.position == 1 ? std::string(BigramTable::kStart) : vocab_[static_cast<std::size_t>(slots[query.position - 1])];
  std::vector<double> dist(vocab_.size(), 0.0);
  auto row = table_.rows().find(prev);
  if (row != table_.rows().end()) {
    for (const auto& [next, p] : row->second) dist[static_cast<std::size_t>(ids_.find(next)->second)] = p;
  }
  return dist;
}

}  // namespace syngauntlet
