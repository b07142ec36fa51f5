#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syngauntlet/engine.hpp"

namespace syngauntlet {

// --- single report ----------------------------------------------------------

/// Structured document with every suite, item, prediction outcome and
/// surprisal entry. Key order and number formatting are fixed, so equal
/// reports serialize to identical bytes.
std::string report_to_json(const RunReport& report);

/// Inverse of report_to_json. `items` may be omitted per suite (accuracy is
/// then taken as given). Aggregates are recomputed from the suites.
/// Throws DocumentError.
RunReport report_from_json(std::string_view document);
RunReport load_report_file(const std::string& path);

/// Columns: suite, circuit, language, has_modifier, accuracy.
std::string report_to_csv(const RunReport& report);

/// Human-readable summary: suites grouped by circuit with circuit means,
/// overall mean, language means and modifier-pair rows. Accuracies are shown
/// as percentages with two decimals.
std::string report_to_table(const RunReport& report);

/// "77.80" for 0.778.
std::string format_percent(double accuracy);

/// "English" for "en", "Spanish" for "es", otherwise the tag itself.
std::string language_display_name(std::string_view tag);

// --- several reports --------------------------------------------------------

struct ComparisonRow {
  enum class Kind { Suite, Circuit, Language, Overall };
  Kind kind = Kind::Suite;
  std::string language;  // empty for Overall
  std::string label;
  std::vector<std::optional<double>> values;  // one per report; nullopt when not covered
};

struct ComparisonTable {
  std::vector<std::string> columns;  // scorer ids
  std::vector<ComparisonRow> rows;
};

/// Side-by-side matrix of suite, circuit, language and overall accuracies.
/// Every report covering a language must cover the same suites of that
/// language, and the reports must be linked through shared languages;
/// otherwise SuiteSetMismatchError.
ComparisonTable compare_runs(std::span<const RunReport> reports);

std::string format_comparison(const ComparisonTable& table);

/// One row per report, one column per language: the mean suite accuracy in
/// that language, or "---" when the report does not cover it.
std::string format_language_summary(std::span<const RunReport> reports);

}  // namespace syngauntlet
