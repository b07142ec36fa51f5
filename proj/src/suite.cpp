#include "syngauntlet/suite.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "syngauntlet/error.hpp"
#include "syngauntlet/prediction.hpp"
#include "syngauntlet/utf8.hpp"

namespace syngauntlet {

using json = nlohmann::ordered_json;

std::string_view circuit_id(Circuit circuit) noexcept {
  switch (circuit) {
    case Circuit::Agreement: return "agreement";
    case Circuit::Licensing: return "licensing";
    case Circuit::CenterEmbedding: return "center_embedding";
    case Circuit::LongDistanceDependencies: return "long_distance_dependencies";
    case Circuit::GrossSyntacticState: return "gross_syntactic_state";
    case Circuit::GardenPathEffects: return "garden_path_effects";
    case Circuit::Linearization: return "linearization";
  }
  return "unknown";
}

std::string_view circuit_display_name(Circuit circuit) noexcept {
  switch (circuit) {
    case Circuit::Agreement: return "Agreement";
    case Circuit::Licensing: return "Licensing";
    case Circuit::CenterEmbedding: return "Center Embedding";
    case Circuit::LongDistanceDependencies: return "Long-Distance Dependencies";
    case Circuit::GrossSyntacticState: return "Gross Syntactic State";
    case Circuit::GardenPathEffects: return "Garden Path Effects";
    case Circuit::Linearization: return "Linearization";
  }
  return "Unknown";
}

std::optional<Circuit> parse_circuit(std::string_view id) noexcept {
  for (Circuit c : kAllCircuits) {
    if (circuit_id(c) == id) return c;
  }
  return std::nullopt;
}

// --- loading ----------------------------------------------------------------

namespace {

using Kind = DocumentError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& message) { throw DocumentError(kind, message); }

const char* type_label(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::boolean: return "boolean";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    case json::value_t::number_float: return "number";
    default: return "value";
  }
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(Kind::UnknownField, "unexpected key '" + key + "' in " + where);
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(Kind::MissingField, std::string("'") + key + "' is required in " + where);
  return *it;
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) fail(Kind::TypeMismatch, what + " must be a string, got " + type_label(j));
  return j.get<std::string>();
}

std::vector<std::string> as_string_array(const json& j, const std::string& what) {
  if (!j.is_array()) fail(Kind::TypeMismatch, what + " must be an array, got " + type_label(j));
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_string(j[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Item parse_item(const json& j, std::size_t position) {
  const std::string where = "items[" + std::to_string(position) + "]";
  if (!j.is_object()) fail(Kind::TypeMismatch, where + " must be an object, got " + type_label(j));
  reject_unknown_keys(j, {"index", "conditions"}, where);

  Item item;
  const json& index = require(j, "index", where);
  if (!index.is_number_integer()) fail(Kind::TypeMismatch, where + ".index must be an integer");
  item.index = index.get<int>();

  const json& conditions = require(j, "conditions", where);
  if (!conditions.is_object()) fail(Kind::TypeMismatch, where + ".conditions must be an object");
  for (const auto& [name, body] : conditions.items()) {
    const std::string cwhere = where + ".conditions." + name;
    if (!body.is_object()) fail(Kind::TypeMismatch, cwhere + " must be an object");
    reject_unknown_keys(body, {"regions"}, cwhere);
    RegionedSentence sentence;
    sentence.regions = as_string_array(require(body, "regions", cwhere), cwhere + ".regions");
    item.sentences.emplace(name, std::move(sentence));
  }
  return item;
}

}  // namespace

TestSuite load_suite(std::string_view document) {
  if (!utf8::is_valid(document)) fail(Kind::MalformedDocument, "document is not valid UTF-8");
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    fail(Kind::MalformedDocument, e.what());
  }
  if (!root.is_object()) fail(Kind::TypeMismatch, "suite document must be an object");
  reject_unknown_keys(root,
                      {"name", "circuit", "language", "has_modifier", "modifier_pair_id", "region_names",
                       "condition_names", "predictions", "items"},
                      "suite");

  TestSuite suite;
  suite.name = as_string(require(root, "name", "suite"), "name");

  const std::string circuit = as_string(require(root, "circuit", "suite"), "circuit");
  auto parsed = parse_circuit(circuit);
  if (!parsed) fail(Kind::InvalidValue, "unknown circuit '" + circuit + "'");
  suite.circuit = *parsed;

  suite.language = as_string(require(root, "language", "suite"), "language");

  const json& has_modifier = require(root, "has_modifier", "suite");
  if (!has_modifier.is_boolean()) fail(Kind::TypeMismatch, "has_modifier must be a boolean");
  suite.has_modifier = has_modifier.get<bool>();

  const json& pair = require(root, "modifier_pair_id", "suite");
  if (!pair.is_null()) suite.modifier_pair_id = as_string(pair, "modifier_pair_id");

  suite.region_names = as_string_array(require(root, "region_names", "suite"), "region_names");
  suite.condition_names = as_string_array(require(root, "condition_names", "suite"), "condition_names");
  suite.predictions = as_string_array(require(root, "predictions", "suite"), "predictions");

  const json& items = require(root, "items", "suite");
  if (!items.is_array()) fail(Kind::TypeMismatch, "items must be an array");
  suite.items.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) suite.items.push_back(parse_item(items[i], i));
  return suite;
}

TestSuite load_suite_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open suite file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_suite(buf.str());
}

std::string serialize_suite(const TestSuite& suite) {
  json root;
  root["name"] = suite.name;
  root["circuit"] = std::string(circuit_id(suite.circuit));
  root["language"] = suite.language;
  root["has_modifier"] = suite.has_modifier;
  root["modifier_pair_id"] = suite.modifier_pair_id ? json(*suite.modifier_pair_id) : json(nullptr);
  root["region_names"] = suite.region_names;
  root["condition_names"] = suite.condition_names;
  root["predictions"] = suite.predictions;
  json items = json::array();
  for (const Item& item : suite.items) {
    json conditions = json::object();
    // Declared order first, then anything undeclared so nothing is lost.
    for (const std::string& name : suite.condition_names) {
      auto it = item.sentences.find(name);
      if (it != item.sentences.end()) conditions[name] = json{{"regions", it->second.regions}};
    }
    for (const auto& [name, sentence] : item.sentences) {
      if (!conditions.contains(name)) conditions[name] = json{{"regions", sentence.regions}};
    }
    items.push_back(json{{"index", item.index}, {"conditions", std::move(conditions)}});
  }
  root["items"] = std::move(items);
  return root.dump(2) + "\n";
}

// --- validation -------------------------------------------------------------

std::string_view validation_code_name(ValidationCode code) noexcept {
  switch (code) {
    case ValidationCode::EmptyConditionNames: return "EmptyConditionNames";
    case ValidationCode::EmptyRegionNames: return "EmptyRegionNames";
    case ValidationCode::DuplicateConditionName: return "DuplicateConditionName";
    case ValidationCode::DuplicateRegionName: return "DuplicateRegionName";
    case ValidationCode::NoItems: return "NoItems";
    case ValidationCode::DuplicateItemIndex: return "DuplicateItemIndex";
    case ValidationCode::NonContiguousItemIndex: return "NonContiguousItemIndex";
    case ValidationCode::MissingCondition: return "MissingCondition";
    case ValidationCode::ExtraCondition: return "ExtraCondition";
    case ValidationCode::RegionCountMismatch: return "RegionCountMismatch";
    case ValidationCode::LineBreakInRegion: return "LineBreakInRegion";
    case ValidationCode::EmptySentence: return "EmptySentence";
    case ValidationCode::UnparseablePrediction: return "UnparseablePrediction";
    case ValidationCode::DanglingRegionRef: return "DanglingRegionRef";
    case ValidationCode::UnknownConditionRef: return "UnknownConditionRef";
  }
  return "Unknown";
}

namespace {

bool has_line_break(const std::string& text) {
  try {
    const std::u32string chars = utf8::decode(text);
    return std::any_of(chars.begin(), chars.end(), utf8::is_line_break);
  } catch (const std::invalid_argument&) {
    return text.find('\n') != std::string::npos || text.find('\r') != std::string::npos;
  }
}

}  // namespace

ValidationReport validate_suite(const TestSuite& suite) {
  ValidationReport report;
  auto add = [&](ValidationCode code, std::optional<int> item, std::string message) {
    report.errors.push_back({code, item, std::move(message)});
  };

  if (suite.condition_names.empty()) add(ValidationCode::EmptyConditionNames, std::nullopt, "no conditions declared");
  if (suite.region_names.empty()) add(ValidationCode::EmptyRegionNames, std::nullopt, "no regions declared");

  std::set<std::string> declared;
  for (const std::string& name : suite.condition_names) {
    if (!declared.insert(name).second) {
      add(ValidationCode::DuplicateConditionName, std::nullopt, "condition '" + name + "' declared twice");
    }
  }
  std::set<std::string> region_names;
  for (const std::string& name : suite.region_names) {
    if (!region_names.insert(name).second) {
      add(ValidationCode::DuplicateRegionName, std::nullopt, "region '" + name + "' declared twice");
    }
  }

  if (suite.items.empty()) add(ValidationCode::NoItems, std::nullopt, "suite has no items");

  std::set<int> seen;
  for (const Item& item : suite.items) {
    if (!seen.insert(item.index).second) {
      add(ValidationCode::DuplicateItemIndex, item.index, "item index " + std::to_string(item.index) + " repeats");
    }
  }
  {
    int expected = 1;
    for (int index : seen) {
      if (index != expected) {
        add(ValidationCode::NonContiguousItemIndex, index,
            "item indices must run 1.." + std::to_string(seen.size()) + "; found " + std::to_string(index));
        break;
      }
      ++expected;
    }
  }

  const std::size_t region_count = suite.region_names.size();
  for (const Item& item : suite.items) {
    for (const std::string& name : declared) {
      if (!item.sentences.contains(name)) {
        add(ValidationCode::MissingCondition, item.index, "condition '" + name + "' missing");
      }
    }
    for (const auto& [name, sentence] : item.sentences) {
      if (!declared.contains(name)) {
        add(ValidationCode::ExtraCondition, item.index, "undeclared condition '" + name + "'");
        continue;
      }
      if (sentence.regions.size() != region_count) {
        add(ValidationCode::RegionCountMismatch, item.index,
            "condition '" + name + "' has " + std::to_string(sentence.regions.size()) + " regions, expected " +
                std::to_string(region_count));
      }
      if (std::any_of(sentence.regions.begin(), sentence.regions.end(), has_line_break)) {
        add(ValidationCode::LineBreakInRegion, item.index, "condition '" + name + "' has a line break in a region");
      }
      if (std::all_of(sentence.regions.begin(), sentence.regions.end(),
                      [](const std::string& r) { return r.empty(); })) {
        add(ValidationCode::EmptySentence, item.index, "condition '" + name + "' renders to an empty sentence");
      }
    }
  }

  for (std::size_t p = 0; p < suite.predictions.size(); ++p) {
    const std::string& source = suite.predictions[p];
    const std::string label = "prediction " + std::to_string(p + 1);
    PredictionAst ast;
    try {
      ast = parse_prediction(source);
    } catch (const ParseError& e) {
      add(ValidationCode::UnparseablePrediction, std::nullopt, label + ": " + e.what());
      continue;
    }
    for (const auto& target : referenced_targets(ast)) {
      if (target.region < 1 || static_cast<std::size_t>(target.region) > region_count) {
        add(ValidationCode::DanglingRegionRef, std::nullopt,
            label + " references region " + std::to_string(target.region) + " of a " + std::to_string(region_count) +
                "-region suite");
      }
      if (!declared.contains(target.condition)) {
        add(ValidationCode::UnknownConditionRef, std::nullopt,
            label + " references undeclared condition '" + target.condition + "'");
      }
    }
  }
  return report;
}

// --- rendering --------------------------------------------------------------

RenderedSentence render_sentence(const RegionedSentence& sentence) {
  RenderedSentence out;
  out.spans.resize(sentence.regions.size());
  std::vector<std::size_t> pending_gaps;
  std::size_t pos = 0;
  bool first = true;
  for (std::size_t r = 0; r < sentence.regions.size(); ++r) {
    const std::string& region = sentence.regions[r];
    if (region.empty()) {
      pending_gaps.push_back(r);
      continue;
    }
    if (!first) {
      out.text.push_back(' ');
      ++pos;
    }
    first = false;
    for (std::size_t gap : pending_gaps) out.spans[gap] = {pos, pos};
    pending_gaps.clear();
    const std::size_t len = utf8::length(region);
    out.text += region;
    out.spans[r] = {pos, pos + len};
    pos += len;
  }
  if (first) throw EmptySentenceError();
  for (std::size_t gap : pending_gaps) out.spans[gap] = {pos, pos};
  return out;
}

}  // namespace syngauntlet
