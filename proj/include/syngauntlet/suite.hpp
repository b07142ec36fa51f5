#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syngauntlet {

/// Families of syntactic phenomena a suite belongs to.
enum class Circuit {
  Agreement,
  Licensing,
  CenterEmbedding,
  LongDistanceDependencies,
  GrossSyntacticState,
  GardenPathEffects,
  Linearization,
};

inline constexpr Circuit kAllCircuits[] = {
    Circuit::Agreement,           Circuit::Licensing,         Circuit::CenterEmbedding,
    Circuit::LongDistanceDependencies, Circuit::GrossSyntacticState, Circuit::GardenPathEffects,
    Circuit::Linearization,
};

/// Serialized identifier, e.g. "center_embedding".
std::string_view circuit_id(Circuit circuit) noexcept;
/// Human-readable name, e.g. "Center Embedding".
std::string_view circuit_display_name(Circuit circuit) noexcept;
std::optional<Circuit> parse_circuit(std::string_view id) noexcept;

/// One condition's sentence, split into regions. Regions may be empty (gaps).
struct RegionedSentence {
  std::vector<std::string> regions;

  bool operator==(const RegionedSentence&) const = default;
};

struct Item {
  int index = 0;  // 1-based
  std::map<std::string, RegionedSentence> sentences;

  bool operator==(const Item&) const = default;
};

struct TestSuite {
  std::string name;
  Circuit circuit = Circuit::Agreement;
  std::string language;
  bool has_modifier = false;
  std::optional<std::string> modifier_pair_id;
  std::vector<std::string> condition_names;
  std::vector<std::string> region_names;
  std::vector<Item> items;
  std::vector<std::string> predictions;

  std::size_t region_count() const noexcept { return region_names.size(); }

  bool operator==(const TestSuite&) const = default;
};

// --- serialized form --------------------------------------------------------

/// Parses a suite document. Cross-field invariants are not checked here; see
/// validate_suite. Throws DocumentError.
TestSuite load_suite(std::string_view document);
TestSuite load_suite_file(const std::string& path);

/// Pretty-printed document; load_suite(serialize_suite(s)) == s.
std::string serialize_suite(const TestSuite& suite);

// --- validation -------------------------------------------------------------

enum class ValidationCode {
  EmptyConditionNames,
  EmptyRegionNames,
  DuplicateConditionName,
  DuplicateRegionName,
  NoItems,
  DuplicateItemIndex,
  NonContiguousItemIndex,
  MissingCondition,
  ExtraCondition,
  RegionCountMismatch,
  LineBreakInRegion,
  EmptySentence,
  UnparseablePrediction,
  DanglingRegionRef,
  UnknownConditionRef,
};

std::string_view validation_code_name(ValidationCode code) noexcept;

struct ValidationError {
  ValidationCode code;
  std::optional<int> item_index;
  std::string message;

  bool operator==(const ValidationError&) const = default;
};

struct ValidationReport {
  std::vector<ValidationError> errors;

  bool ok() const noexcept { return errors.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate_suite(const TestSuite& suite);

// --- rendering --------------------------------------------------------------

/// Half-open range of character (scalar value) offsets.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  bool empty() const noexcept { return start == end; }
  bool contains(std::size_t pos) const noexcept { return start <= pos && pos < end; }
  bool operator==(const CharSpan&) const = default;
};

struct RenderedSentence {
  std::string text;
  std::vector<CharSpan> spans;  // one per region
};

/// Joins the non-empty regions with single spaces. Empty regions get an empty
/// span at the start of the next non-empty region (or at the end of the text
/// when none follows). Throws EmptySentenceError.
RenderedSentence render_sentence(const RegionedSentence& sentence);

}  // namespace syngauntlet
