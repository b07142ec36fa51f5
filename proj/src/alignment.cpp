#include "syngauntlet/alignment.hpp"

#include <stdexcept>

#include "syngauntlet/error.hpp"

namespace syngauntlet {

RegionAssignment assign_regions(std::span<const CharSpan> region_spans, std::span<const ScoredToken> tokens) {
  RegionAssignment out;
  out.reserve(tokens.size());
  // Both sequences are ordered, so a single forward sweep suffices.
  std::size_t r = 0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const std::size_t first = tokens[k].char_start;
    while (r < region_spans.size() && (region_spans[r].empty() || region_spans[r].end <= first)) ++r;
    if (r == region_spans.size()) throw UnalignableTokenError(k, first);
    // Either inside region r, or in the space before it.
    out.push_back(static_cast<int>(r) + 1);
  }
  return out;
}

std::vector<double> region_totals(const RegionAssignment& assignment, std::span<const ScoredToken> tokens,
                                  std::size_t region_count) {
  if (assignment.size() != tokens.size()) throw std::invalid_argument("assignment and token counts differ");
  std::vector<double> totals(region_count, 0.0);
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const int r = assignment[k];
    if (r < 1 || static_cast<std::size_t>(r) > region_count) throw std::out_of_range("region index out of range");
    totals[static_cast<std::size_t>(r - 1)] += tokens[k].surprisal_bits;
  }
  return totals;
}

void region_surprisals(const RegionAssignment& assignment, std::span<const ScoredToken> tokens,
                       std::size_t region_count, const std::string& condition, SurprisalTable& table) {
  const std::vector<double> totals = region_totals(assignment, tokens, region_count);
  for (std::size_t r = 0; r < totals.size(); ++r) table.set(condition, static_cast<int>(r) + 1, totals[r]);
}

}  // namespace syngauntlet
