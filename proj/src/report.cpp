#include "syngauntlet/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace syngauntlet {

using json = nlohmann::ordered_json;

std::string format_percent(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", accuracy * 100.0);
  return buf;
}

std::string language_display_name(std::string_view tag) {
  if (tag == "en") return "English";
  if (tag == "es") return "Spanish";
  return std::string(tag);
}

// --- JSON -------------------------------------------------------------------

std::string report_to_json(const RunReport& report) {
  json root;
  root["scorer_id"] = report.scorer_id;
  root["partial"] = report.partial;
  if (report.partial) root["abort_reason"] = report.abort_reason;
  root["overall"] = report.overall;

  json circuits = json::object();
  for (const auto& [circuit, mean] : report.circuit_means) circuits[std::string(circuit_id(circuit))] = mean;
  root["circuit_means"] = std::move(circuits);

  json languages = json::object();
  for (const auto& [language, mean] : report.language_means) languages[language] = mean;
  root["language_means"] = std::move(languages);

  json pairs = json::array();
  for (const ModifierPair& p : report.modifier_pairs) {
    pairs.push_back({{"pair_id", p.pair_id}, {"accuracy_without", p.accuracy_without}, {"accuracy_with", p.accuracy_with}});
  }
  root["modifier_pairs"] = std::move(pairs);

  json suites = json::array();
  for (const SuiteResult& s : report.suites) {
    json js;
    js["name"] = s.name;
    js["circuit"] = circuit_id(s.circuit);
    js["language"] = s.language;
    js["has_modifier"] = s.has_modifier;
    js["modifier_pair_id"] = s.modifier_pair_id ? json(*s.modifier_pair_id) : json(nullptr);
    js["accuracy"] = s.accuracy;
    json items = json::array();
    for (const ItemResult& item : s.items) {
      json ji;
      ji["index"] = item.item_index;
      ji["passed"] = item.passed;
      json preds = json::array();
      for (bool b : item.predictions) preds.push_back(b);
      ji["predictions"] = std::move(preds);
      json table = json::object();
      for (const auto& [key, bits] : item.surprisals.entries()) table[key.first].push_back(bits);
      ji["surprisals"] = std::move(table);
      items.push_back(std::move(ji));
    }
    js["items"] = std::move(items);
    suites.push_back(std::move(js));
  }
  root["suites"] = std::move(suites);
  return root.dump(2) + "\n";
}

namespace {

using Kind = DocumentError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& message) { throw DocumentError(kind, "report: " + message); }

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(Kind::MissingField, std::string("'") + key + "' is required");
  return *it;
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) fail(Kind::TypeMismatch, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

double number_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number()) fail(Kind::TypeMismatch, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

bool bool_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_boolean()) fail(Kind::TypeMismatch, std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

ItemResult parse_item_result(const json& j) {
  if (!j.is_object()) fail(Kind::TypeMismatch, "item result must be an object");
  ItemResult item;
  const json& index = field(j, "index");
  if (!index.is_number_integer()) fail(Kind::TypeMismatch, "'index' must be an integer");
  item.item_index = index.get<int>();
  item.passed = bool_field(j, "passed");
  const json& preds = field(j, "predictions");
  if (!preds.is_array()) fail(Kind::TypeMismatch, "'predictions' must be an array");
  for (const json& p : preds) {
    if (!p.is_boolean()) fail(Kind::TypeMismatch, "prediction outcomes must be booleans");
    item.predictions.push_back(p.get<bool>());
  }
  if (auto it = j.find("surprisals"); it != j.end()) {
    if (!it->is_object()) fail(Kind::TypeMismatch, "'surprisals' must be an object");
    for (const auto& [condition, values] : it->items()) {
      if (!values.is_array()) fail(Kind::TypeMismatch, "surprisals of '" + condition + "' must be an array");
      for (std::size_t r = 0; r < values.size(); ++r) {
        if (!values[r].is_number()) fail(Kind::TypeMismatch, "surprisal values must be numbers");
        item.surprisals.set(condition, static_cast<int>(r) + 1, values[r].get<double>());
      }
    }
  }
  return item;
}

SuiteResult parse_suite_result(const json& j) {
  if (!j.is_object()) fail(Kind::TypeMismatch, "suite result must be an object");
  SuiteResult s;
  s.name = string_field(j, "name");
  const std::string circuit = string_field(j, "circuit");
  auto c = parse_circuit(circuit);
  if (!c) fail(Kind::InvalidValue, "unknown circuit '" + circuit + "'");
  s.circuit = *c;
  s.language = string_field(j, "language");
  s.has_modifier = bool_field(j, "has_modifier");
  if (auto it = j.find("modifier_pair_id"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) fail(Kind::TypeMismatch, "'modifier_pair_id' must be a string or null");
    s.modifier_pair_id = it->get<std::string>();
  }
  s.accuracy = number_field(j, "accuracy");
  if (s.accuracy < 0.0 || s.accuracy > 1.0) fail(Kind::InvalidValue, "accuracy of '" + s.name + "' is outside [0,1]");
  if (auto it = j.find("items"); it != j.end()) {
    if (!it->is_array()) fail(Kind::TypeMismatch, "'items' must be an array");
    for (const json& item : *it) s.items.push_back(parse_item_result(item));
    if (!s.items.empty()) finalize_suite(s);
  }
  return s;
}

}  // namespace

RunReport report_from_json(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    fail(Kind::MalformedDocument, e.what());
  }
  if (!root.is_object()) fail(Kind::TypeMismatch, "document must be an object");
  const json& suites = field(root, "suites");
  if (!suites.is_array()) fail(Kind::TypeMismatch, "'suites' must be an array");
  std::vector<SuiteResult> results;
  for (const json& s : suites) results.push_back(parse_suite_result(s));
  RunReport report = aggregate_run(string_field(root, "scorer_id"), std::move(results));
  if (auto it = root.find("partial"); it != root.end() && it->is_boolean()) report.partial = it->get<bool>();
  if (auto it = root.find("abort_reason"); it != root.end() && it->is_string()) report.abort_reason = it->get<std::string>();
  return report;
}

RunReport load_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open report '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

// --- CSV --------------------------------------------------------------------

namespace {

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string shortest(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

std::string report_to_csv(const RunReport& report) {
  std::string out = "suite,circuit,language,has_modifier,accuracy\n";
  for (const SuiteResult& s : report.suites) {
    out += csv_field(s.name) + "," + std::string(circuit_id(s.circuit)) + "," + csv_field(s.language) + "," +
           (s.has_modifier ? "true" : "false") + "," + shortest(s.accuracy) + "\n";
  }
  return out;
}

// --- table ------------------------------------------------------------------

namespace {

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

std::string report_to_table(const RunReport& report) {
  std::size_t label_width = 24;
  for (const SuiteResult& s : report.suites) label_width = std::max(label_width, s.name.size() + s.language.size() + 7);
  for (const ModifierPair& p : report.modifier_pairs) label_width = std::max(label_width, p.pair_id.size() + 4);

  std::string out = "scorer: " + report.scorer_id + "\n";
  if (report.partial) out += "PARTIAL: " + report.abort_reason + "\n";
  for (const auto& [circuit, mean] : report.circuit_means) {
    out += "\n" + std::string(circuit_display_name(circuit)) + "\n";
    for (const SuiteResult& s : report.suites) {
      if (s.circuit != circuit) continue;
      out += pad_right("  " + s.name + " [" + s.language + "]", label_width) + pad_left(format_percent(s.accuracy), 8) + "\n";
    }
    out += pad_right("  mean", label_width) + pad_left(format_percent(mean), 8) + "\n";
  }
  out += "\n" + pad_right("overall", label_width) + pad_left(format_percent(report.overall), 8) + "\n";
  if (!report.language_means.empty()) {
    out += "\nlanguages\n";
    for (const auto& [language, mean] : report.language_means) {
      out += pad_right("  " + language_display_name(language), label_width) + pad_left(format_percent(mean), 8) + "\n";
    }
  }
  if (!report.modifier_pairs.empty()) {
    out += "\n" + pad_right("modifier pairs", label_width) + pad_left("without", 8) + pad_left("with", 8) + "\n";
    for (const ModifierPair& p : report.modifier_pairs) {
      out += pad_right("  " + p.pair_id, label_width) + pad_left(format_percent(p.accuracy_without), 8) +
             pad_left(format_percent(p.accuracy_with), 8) + "\n";
    }
  }
  return out;
}

// --- comparison -------------------------------------------------------------

namespace {

std::set<std::string> languages_of(const RunReport& r) {
  std::set<std::string> out;
  for (const SuiteResult& s : r.suites) out.insert(s.language);
  return out;
}

std::set<std::string> suite_names(const RunReport& r, const std::string& language) {
  std::set<std::string> out;
  for (const SuiteResult& s : r.suites) {
    if (s.language == language) out.insert(s.name);
  }
  return out;
}

std::optional<double> mean_of(const RunReport& r, const std::string& language, std::optional<Circuit> circuit) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const SuiteResult& s : r.suites) {
    if (s.language != language || (circuit && s.circuit != *circuit)) continue;
    sum += s.accuracy;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

ComparisonTable compare_runs(std::span<const RunReport> reports) {
  ComparisonTable table;
  if (reports.empty()) return table;

  std::vector<std::set<std::string>> langs;
  std::set<std::string> all_languages;
  for (const RunReport& r : reports) {
    table.columns.push_back(r.scorer_id);
    langs.push_back(languages_of(r));
    all_languages.insert(langs.back().begin(), langs.back().end());
  }

  // Same suite set per language.
  std::map<std::string, std::size_t> reference;  // language -> first report covering it
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const std::string& language : langs[i]) {
      auto [it, inserted] = reference.try_emplace(language, i);
      if (inserted) continue;
      if (suite_names(reports[it->second], language) != suite_names(reports[i], language)) {
        throw SuiteSetMismatchError("reports '" + reports[it->second].scorer_id + "' and '" + reports[i].scorer_id +
                                    "' cover different " + language + " suites");
      }
    }
  }

  // Reports must be linked through shared languages.
  if (reports.size() > 1) {
    std::vector<bool> reached(reports.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < reports.size(); ++j) {
        if (reached[j]) continue;
        const bool shared = std::any_of(langs[i].begin(), langs[i].end(),
                                        [&](const std::string& l) { return langs[j].count(l) > 0; });
        if (shared) {
          reached[j] = true;
          stack.push_back(j);
        }
      }
    }
    for (std::size_t j = 0; j < reports.size(); ++j) {
      if (!reached[j]) {
        throw SuiteSetMismatchError("report '" + reports[j].scorer_id + "' shares no suites with '" +
                                    reports[0].scorer_id + "'");
      }
    }
  }

  auto row = [&](ComparisonRow::Kind kind, const std::string& language, std::string label, auto&& value_of) {
    ComparisonRow r{kind, language, std::move(label), {}};
    for (std::size_t i = 0; i < reports.size(); ++i) r.values.push_back(value_of(i));
    table.rows.push_back(std::move(r));
  };

  for (const std::string& language : all_languages) {
    const RunReport& ref = reports[reference.at(language)];
    for (Circuit circuit : kAllCircuits) {
      for (const SuiteResult& s : ref.suites) {
        if (s.language != language || s.circuit != circuit) continue;
        row(ComparisonRow::Kind::Suite, language, s.name, [&](std::size_t i) -> std::optional<double> {
          for (const SuiteResult& t : reports[i].suites) {
            if (t.language == language && t.name == s.name) return t.accuracy;
          }
          return std::nullopt;
        });
      }
    }
  }
  for (const std::string& language : all_languages) {
    for (Circuit circuit : kAllCircuits) {
      if (!mean_of(reports[reference.at(language)], language, circuit)) continue;
      row(ComparisonRow::Kind::Circuit, language, std::string(circuit_display_name(circuit)),
          [&](std::size_t i) { return mean_of(reports[i], language, circuit); });
    }
  }
  for (const std::string& language : all_languages) {
    row(ComparisonRow::Kind::Language, language, language_display_name(language),
        [&](std::size_t i) { return mean_of(reports[i], language, std::nullopt); });
  }
  row(ComparisonRow::Kind::Overall, "", "Overall", [&](std::size_t i) -> std::optional<double> {
    return reports[i].overall;
  });
  return table;
}

std::string format_comparison(const ComparisonTable& table) {
  auto label_of = [](const ComparisonRow& r) {
    switch (r.kind) {
      case ComparisonRow::Kind::Suite: return "  [" + r.language + "] " + r.label;
      case ComparisonRow::Kind::Circuit: return "  [" + r.language + "] " + r.label + " (mean)";
      case ComparisonRow::Kind::Language: return "  " + r.label;
      case ComparisonRow::Kind::Overall: return r.label;
    }
    return r.label;
  };
  std::size_t label_width = 8;
  for (const ComparisonRow& r : table.rows) label_width = std::max(label_width, label_of(r).size() + 2);
  std::vector<std::size_t> widths;
  for (const std::string& c : table.columns) widths.push_back(std::max<std::size_t>(c.size() + 2, 9));

  std::string out = pad_right("", label_width);
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += pad_left(table.columns[i], widths[i]);
  out += "\n";
  std::optional<ComparisonRow::Kind> section;
  for (const ComparisonRow& r : table.rows) {
    if (section != r.kind) {
      section = r.kind;
      switch (r.kind) {
        case ComparisonRow::Kind::Suite: out += "suites\n"; break;
        case ComparisonRow::Kind::Circuit: out += "circuits\n"; break;
        case ComparisonRow::Kind::Language: out += "languages\n"; break;
        case ComparisonRow::Kind::Overall: break;
      }
    }
    out += pad_right(label_of(r), label_width);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      out += pad_left(r.values[i] ? format_percent(*r.values[i]) : "---", widths[i]);
    }
    out += "\n";
  }
  return out;
}

std::string format_language_summary(std::span<const RunReport> reports) {
  std::set<std::string> languages;
  std::size_t label_width = 6;
  for (const RunReport& r : reports) {
    for (const SuiteResult& s : r.suites) languages.insert(s.language);
    label_width = std::max(label_width, r.scorer_id.size() + 2);
  }
  std::vector<std::size_t> widths;
  std::string out = pad_right("Model", label_width);
  for (const std::string& l : languages) {
    widths.push_back(std::max<std::size_t>(language_display_name(l).size() + 2, 9));
    out += pad_left(language_display_name(l), widths.back());
  }
  out += "\n";
  for (const RunReport& r : reports) {
    out += pad_right(r.scorer_id, label_width);
    std::size_t k = 0;
    for (const std::string& l : languages) {
      const auto mean = mean_of(r, l, std::nullopt);
      out += pad_left(mean ? format_percent(*mean) : "---", widths[k++]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace syngauntlet
