#pragma once

#include <span>
#include <string>
#include <vector>

#include "syngauntlet/prediction.hpp"
#include "syngauntlet/scoring.hpp"
#include "syngauntlet/suite.hpp"

namespace syngauntlet {

/// 1-based region index for each token, in token order.
using RegionAssignment = std::vector<int>;

/// A token belongs to the region containing its first character. A token that
/// starts in a join space belongs to the next non-empty region. Gap (empty)
/// regions never receive tokens. Throws UnalignableTokenError when a token
/// starts after the last region.
RegionAssignment assign_regions(std::span<const CharSpan> region_spans, std::span<const ScoredToken> tokens);

/// Per-region sums of token surprisal, in token order; regions without tokens
/// are exactly 0.
std::vector<double> region_totals(const RegionAssignment& assignment, std::span<const ScoredToken> tokens,
                                  std::size_t region_count);

/// region_totals written into `table` under `condition`.
void region_surprisals(const RegionAssignment& assignment, std::span<const ScoredToken> tokens,
                       std::size_t region_count, const std::string& condition, SurprisalTable& table);

}  // namespace syngauntlet
