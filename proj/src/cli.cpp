#include "syngauntlet/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "syngauntlet/engine.hpp"
#include "syngauntlet/error.hpp"
#include "syngauntlet/ngram.hpp"
#include "syngauntlet/report.hpp"
#include "syngauntlet/suite_data.hpp"

namespace syngauntlet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  if (fs::path parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::vector<double> parse_lambdas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || part.find_first_not_of(" \t", used) != std::string::npos) {
      throw UsageError("--lambdas: '" + part + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

ScorerKind parse_scorer_kind(const std::string& s) {
  if (s == "ngram") return ScorerKind::Ngram;
  if (s == "uniform") return ScorerKind::Uniform;
  if (s == "remote") return ScorerKind::Remote;
  throw UsageError("unknown scorer '" + s + "' (ngram, uniform, remote)");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw UsageError("unknown format '" + s + "' (table, json, csv)");
}

Circuit parse_circuit_arg(const std::string& s) {
  if (auto c = parse_circuit(s)) return *c;
  std::string known;
  for (Circuit c : kAllCircuits) known += (known.empty() ? "" : ", ") + std::string(circuit_id(c));
  throw UsageError("unknown circuit '" + s + "' (" + known + ")");
}

std::string render(const RunReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return report_to_json(report);
    case OutputFormat::Csv: return report_to_csv(report);
    case OutputFormat::Table: return report_to_table(report);
  }
  return {};
}

// Flag values as typed on the command line; unset ones fall back to the
// config file, then to RunConfig defaults.
struct RunFlags {
  std::string config;
  std::string scorer, corpus, lambdas, endpoint, format, out;
  int order = 0;
  std::size_t vocab_size = 0;
  long long timeout_ms = 0;
  unsigned retries = 0, in_flight = 0, workers = 0;
  std::vector<std::string> languages, circuits, paths;
};

template <typename T>
T config_value(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw DocumentError(DocumentError::Kind::TypeMismatch, std::string("config key '") + key + "' has the wrong type");
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw DocumentError(DocumentError::Kind::MalformedDocument, "config '" + path + "' is not a JSON object");
  }
  static const std::vector<std::string> known = {"scorer",  "corpus",    "order",    "lambdas",  "vocab-size",
                                                 "endpoint", "timeout-ms", "retries",  "in-flight", "workers",
                                                 "format",  "out",       "language", "circuit",  "suites"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw DocumentError(DocumentError::Kind::UnknownField, "config key '" + key + "'");
    }
  }
  if (doc.contains("scorer")) cfg.scorer = parse_scorer_kind(config_value<std::string>(doc, "scorer"));
  if (doc.contains("corpus")) cfg.corpus = config_value<std::string>(doc, "corpus");
  if (doc.contains("order")) cfg.order = config_value<int>(doc, "order");
  if (doc.contains("lambdas")) cfg.lambdas = config_value<std::vector<double>>(doc, "lambdas");
  if (doc.contains("vocab-size")) cfg.vocab_size = config_value<std::size_t>(doc, "vocab-size");
  if (doc.contains("endpoint")) cfg.endpoint = config_value<std::string>(doc, "endpoint");
  if (doc.contains("timeout-ms")) cfg.retry.timeout = std::chrono::milliseconds(config_value<long long>(doc, "timeout-ms"));
  if (doc.contains("retries")) cfg.retry.max_retries = config_value<unsigned>(doc, "retries");
  if (doc.contains("in-flight")) cfg.retry.max_in_flight = config_value<unsigned>(doc, "in-flight");
  if (doc.contains("workers")) cfg.workers = config_value<unsigned>(doc, "workers");
  if (doc.contains("format")) cfg.format = parse_format(config_value<std::string>(doc, "format"));
  if (doc.contains("out")) cfg.out = config_value<std::string>(doc, "out");
  if (doc.contains("language")) cfg.languages = config_value<std::vector<std::string>>(doc, "language");
  if (doc.contains("circuit")) {
    cfg.circuits.clear();
    for (const auto& c : config_value<std::vector<std::string>>(doc, "circuit")) cfg.circuits.push_back(parse_circuit_arg(c));
  }
  if (doc.contains("suites")) cfg.suite_paths = config_value<std::vector<std::string>>(doc, "suites");
}

RunConfig resolve_run_config(const CLI::App& cmd, const RunFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) apply_config_file(f.config, cfg);
  auto given = [&](const char* name) { return cmd.get_option(name)->count() > 0; };
  if (given("--scorer")) cfg.scorer = parse_scorer_kind(f.scorer);
  if (given("--corpus")) cfg.corpus = f.corpus;
  if (given("--order")) cfg.order = f.order;
  if (given("--lambdas")) cfg.lambdas = parse_lambdas(f.lambdas);
  if (given("--vocab-size")) cfg.vocab_size = f.vocab_size;
  if (given("--endpoint")) cfg.endpoint = f.endpoint;
  if (given("--timeout-ms")) cfg.retry.timeout = std::chrono::milliseconds(f.timeout_ms);
  if (given("--retries")) cfg.retry.max_retries = f.retries;
  if (given("--in-flight")) cfg.retry.max_in_flight = f.in_flight;
  if (given("--workers")) cfg.workers = f.workers;
  if (given("--format")) cfg.format = parse_format(f.format);
  if (given("--out")) cfg.out = f.out;
  if (given("--language")) cfg.languages = f.languages;
  if (given("--circuit")) {
    cfg.circuits.clear();
    for (const auto& c : f.circuits) cfg.circuits.push_back(parse_circuit_arg(c));
  }
  if (!f.paths.empty()) cfg.suite_paths = f.paths;
  if (cfg.endpoint.empty()) {
    if (const char* env = std::getenv("SYNGAUNTLET_ENDPOINT")) cfg.endpoint = env;
  }
  if (cfg.workers < 1) throw UsageError("--workers must be at least 1");
  return cfg;
}

std::vector<TestSuite> select_suites(const RunConfig& cfg) {
  std::vector<TestSuite> suites;
  if (cfg.suite_paths.empty()) {
    suites = shipped_suites();
  } else {
    for (const std::string& path : expand_suite_paths(cfg.suite_paths)) {
      TestSuite s = load_suite(read_file(path));
      const ValidationReport v = validate_suite(s);
      if (!v.ok()) {
        throw DocumentError(DocumentError::Kind::InvalidValue,
                            "'" + path + "' fails validation (" + std::string(validation_code_name(v.errors.front().code)) +
                                "); run 'validate' for details");
      }
      suites.push_back(std::move(s));
    }
  }
  std::erase_if(suites, [&](const TestSuite& s) {
    const bool lang_ok = cfg.languages.empty() ||
                         std::find(cfg.languages.begin(), cfg.languages.end(), s.language) != cfg.languages.end();
    const bool circuit_ok =
        cfg.circuits.empty() || std::find(cfg.circuits.begin(), cfg.circuits.end(), s.circuit) != cfg.circuits.end();
    return !(lang_ok && circuit_ok);
  });
  return suites;
}

// --- subcommands --------------------------------------------------------------

int cmd_validate(const std::vector<std::string>& inputs, std::ostream& out, std::ostream& err) {
  for (const std::string& p : inputs) {
    if (!fs::exists(p)) {
      err << "error: " << p << ": no such file or directory\n";
      return kExitBadInput;
    }
  }
  const std::vector<std::string> files = expand_suite_paths(inputs);
  bool clean = true;
  for (const std::string& path : files) {
    TestSuite suite;
    try {
      suite = load_suite(read_file(path));
    } catch (const std::exception& e) {
      err << "error: " << path << ": " << e.what() << "\n";
      return kExitBadInput;
    }
    const ValidationReport report = validate_suite(suite);
    if (report.ok()) {
      out << path << ": ok (" << suite.items.size() << " items)\n";
      continue;
    }
    clean = false;
    for (const ValidationError& e : report.errors) {
      out << path << ": " << validation_code_name(e.code);
      if (e.item_index) out << " item " << *e.item_index;
      out << ": " << e.message << "\n";
    }
  }
  return clean ? kExitOk : kExitFailed;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<TestSuite> suites = select_suites(cfg);
  if (suites.empty()) throw UsageError("no suites selected");
  std::shared_ptr<const Scorer> scorer = make_scorer(cfg);
  try {
    const RunReport report = evaluate_run(suites, *scorer, EvalOptions{cfg.workers});
    write_output(cfg.out, render(report, cfg.format), out);
    return kExitOk;
  } catch (const RunAborted& e) {
    err << "error: run aborted: " << e.cause().what() << "\n";
    write_output(cfg.out, render(e.partial(), cfg.format), out);
    return kExitScorerFailed;
  }
}

int cmd_compare(const std::vector<std::string>& paths, bool languages_only, std::ostream& out, std::ostream& err) {
  if (paths.size() < 2) {
    err << "error: compare needs at least two reports\n";
    return kExitBadInput;
  }
  std::vector<RunReport> reports;
  for (const std::string& p : paths) {
    try {
      reports.push_back(load_report_file(p));
    } catch (const std::exception& e) {
      err << "error: " << p << ": " << e.what() << "\n";
      return kExitBadInput;
    }
  }
  if (languages_only) {
    out << format_language_summary(reports);
    return kExitOk;
  }
  try {
    out << format_comparison(compare_runs(reports));
  } catch (const SuiteSetMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_list(std::ostream& out) {
  for (const CatalogEntry& e : list_shipped_suites()) {
    out << e.path << "\t" << e.item_count << "\t" << e.name << "\n";
  }
  return kExitOk;
}

int cmd_export(const std::string& dir, bool check, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::string>> docs;  // relative path, content
  for (const ShippedSuite& d : shipped_suite_definitions()) docs.emplace_back(d.relative_path(), serialize_suite(d.build()));
  for (const FixtureSuite& f : fixture_suites()) docs.emplace_back(f.file, serialize_suite(f.suite));

  int stale = 0;
  for (const auto& [rel, content] : docs) {
    const fs::path target = fs::path(dir) / rel;
    if (check) {
      std::string existing;
      try {
        existing = read_file(target.string());
      } catch (const std::exception&) {
      }
      if (existing != content) {
        out << "stale: " << target.string() << "\n";
        ++stale;
      }
      continue;
    }
    write_output(target.string(), content, out);
    out << "wrote " << target.string() << "\n";
  }
  if (stale > 0) {
    err << stale << " suite document(s) differ from the built-in definitions\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace

std::shared_ptr<const Scorer> make_scorer(const RunConfig& config) {
  switch (config.scorer) {
    case ScorerKind::Uniform:
      if (config.vocab_size < 1) throw std::invalid_argument("uniform scorer needs --vocab-size >= 1");
      return std::make_shared<UniformScorer>(config.vocab_size);
    case ScorerKind::Ngram: {
      if (config.corpus.empty()) throw std::invalid_argument("ngram scorer needs --corpus");
      std::vector<double> weights = config.lambdas;
      if (weights.empty()) {
        if (config.order != static_cast<int>(kDefaultNgramWeights.size())) {
          throw std::invalid_argument("--lambdas is required when --order is not " +
                                      std::to_string(kDefaultNgramWeights.size()));
        }
        weights = kDefaultNgramWeights;
      }
      return std::make_shared<NgramScorer>(train_ngram(read_corpus_file(config.corpus), config.order, weights));
    }
    case ScorerKind::Remote: {
      if (config.endpoint.empty()) throw std::invalid_argument("remote scorer needs --endpoint or SYNGAUNTLET_ENDPOINT");
      auto client = std::make_shared<RemoteClient>(config.endpoint, config.retry);
      return std::make_shared<RemoteScorer>(client);
    }
  }
  throw std::invalid_argument("unknown scorer kind");
}

std::vector<std::string> expand_suite_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const std::string& p : paths) {
    if (!fs::is_directory(p)) {
      out.push_back(p);
      continue;
    }
    std::vector<std::string> found;
    for (const auto& entry : fs::recursive_directory_iterator(p)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path().string());
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Targeted syntactic evaluation of language models", "syngauntlet"};
  app.require_subcommand(1);

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Check suite documents; exit 1 when any has errors");
  validate->add_option("paths", validate_paths, "Suite files or directories")->required();

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Evaluate suites with a scorer");
  run->add_option("--config", rf.config, "JSON file with defaults for any flag below");
  run->add_option("--scorer", rf.scorer, "ngram | uniform | remote");
  run->add_option("--corpus", rf.corpus, "Training corpus for the n-gram scorer, one sentence per line");
  run->add_option("--order", rf.order, "n-gram order (default 3)");
  run->add_option("--lambdas", rf.lambdas, "Interpolation weights, highest order first, e.g. 0.6,0.3,0.1");
  run->add_option("--vocab-size", rf.vocab_size, "Vocabulary size of the uniform scorer");
  run->add_option("--endpoint", rf.endpoint, "Fill service URL (default $SYNGAUNTLET_ENDPOINT)");
  run->add_option("--timeout-ms", rf.timeout_ms, "Per-request timeout of the remote scorer");
  run->add_option("--retries", rf.retries, "Retries after a transient remote failure");
  run->add_option("--in-flight", rf.in_flight, "Concurrent remote requests");
  run->add_option("--workers", rf.workers, "Evaluation threads (default 1)");
  run->add_option("--format", rf.format, "table | json | csv");
  run->add_option("--out", rf.out, "Output file (default stdout)");
  run->add_option("--language", rf.languages, "Keep suites of this language (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  run->add_option("--circuit", rf.circuits, "Keep suites of this circuit (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  run->add_option("suites", rf.paths, "Suite files or directories (default: built-in suites)");

  std::vector<std::string> report_paths;
  bool languages_only = false;
  auto* compare = app.add_subcommand("compare", "Side-by-side accuracies of several run reports");
  compare->add_option("reports", report_paths, "JSON run reports")->required();
  compare->add_flag("--languages", languages_only, "Only the per-language summary");

  auto* list = app.add_subcommand("list", "List the built-in suites");

  std::string export_dir;
  bool export_check = false;
  auto* export_cmd = app.add_subcommand("export-suites", "Write the built-in suites and fixtures as documents");
  export_cmd->add_option("dir", export_dir, "Data directory")->required();
  export_cmd->add_flag("--check", export_check, "Compare instead of writing; exit 1 when stale");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (*validate) return cmd_validate(validate_paths, out, err);
    if (*run) return cmd_run(resolve_run_config(*run, rf), out, err);
    if (*compare) return cmd_compare(report_paths, languages_only, out, err);
    if (*list) return cmd_list(out);
    if (*export_cmd) return cmd_export(export_dir, export_check, out, err);
  } catch (const ScorerError& e) {
    err << "error: " << e.what() << "\n";
    return kExitScorerFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace syngauntlet
