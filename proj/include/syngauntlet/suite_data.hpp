#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syngauntlet/scoring.hpp"
#include "syngauntlet/suite.hpp"

namespace syngauntlet {

/// Surface forms of one placeholder, keyed by condition name. The key "*"
/// supplies the form for every condition without an explicit entry.
using ConditionForms = std::map<std::string, std::string>;

/// One lexicon entry: a value for each placeholder the entry binds.
struct LexiconEntry {
  std::map<std::string, ConditionForms> forms;
};

/// Entries that are chosen together. Groups are combined per ExpansionMode.
struct SlotGroup {
  std::vector<LexiconEntry> entries;
};

enum class ExpansionMode {
  Cartesian,  // every combination of one entry per group, first group slowest
  Zip,        // entry k of every group forms item k; groups must be equally long
};

struct SuiteTemplate {
  std::vector<std::string> condition_names;
  std::vector<std::string> region_names;
  /// Region templates per condition with `{placeholder}` slots. Key "*" is
  /// the frame for conditions without their own.
  std::map<std::string, std::vector<std::string>> frames;
  std::vector<SlotGroup> slots;
  ExpansionMode mode = ExpansionMode::Cartesian;
  /// Upper-case the first letter of the first non-empty region.
  bool capitalize = true;
  std::vector<std::string> predictions;
  /// Items copied verbatim ahead of the expansion. Expanded items identical
  /// to one of them are dropped.
  std::vector<std::map<std::string, RegionedSentence>> leading_items;
};

struct SuiteMeta {
  std::string name;
  Circuit circuit = Circuit::Agreement;
  std::string language = "es";
  bool has_modifier = false;
  std::optional<std::string> modifier_pair_id;
};

/// Expands the template into numbered items. Region text is trimmed and runs
/// of spaces collapse to one. Throws InconsistentLexiconError when a frame
/// names an unbound placeholder, an entry lacks a form for some condition,
/// zipped groups differ in length, or a condition has no frame.
TestSuite expand_template(const SuiteTemplate& tmpl, const SuiteMeta& meta);

/// Per-condition cost in bits per token for the constructed oracle: lower is
/// more acceptable. Every shipped prediction holds under these costs.
using ConditionGrades = std::map<std::string, double>;

struct ShippedSuite {
  std::string slug;
  SuiteMeta meta;
  SuiteTemplate tmpl;
  ConditionGrades grades;

  TestSuite build() const { return expand_template(tmpl, meta); }
  /// "es/<circuit_id>/<slug>.json"
  std::string relative_path() const;
};

/// The 26 Spanish suites, in catalog order.
const std::vector<ShippedSuite>& shipped_suite_definitions();
std::vector<TestSuite> shipped_suites();

struct CatalogEntry {
  std::string name;
  Circuit circuit = Circuit::Agreement;
  std::string language;
  bool has_modifier = false;
  std::optional<std::string> modifier_pair_id;
  std::size_t item_count = 0;
  std::string path;
};

std::vector<CatalogEntry> list_shipped_suites();

/// Grades for a shipped or fixture suite, looked up by (language, name).
std::optional<ConditionGrades> grades_for(const TestSuite& suite);

/// Constructed oracle: every word token of a sentence costs its condition's
/// grade. Inverted, the cost is max + min - grade, which reverses every
/// comparison between conditions. Throws InconsistentLexiconError when one
/// text appears under two conditions with different costs.
std::shared_ptr<LookupScorer> build_oracle(const TestSuite& suite, const ConditionGrades& grades, bool inverted = false);

/// Test fixtures that ship alongside the suites under fixtures/.
struct FixtureSuite {
  std::string file;  // relative to the data directory
  TestSuite suite;
  ConditionGrades grades;
};

/// - tie fixture: the compared regions hold the same number of tokens in
///   every condition, so a uniform scorer ties on every prediction;
/// - toy fixture: short sentences over the toy corpus vocabulary.
const std::vector<FixtureSuite>& fixture_suites();

}  // namespace syngauntlet
