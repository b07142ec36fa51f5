#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syngauntlet/remote.hpp"
#include "syngauntlet/scoring.hpp"
#include "syngauntlet/suite.hpp"

namespace syngauntlet {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;       // validation errors, suite-set mismatch
inline constexpr int kExitBadInput = 2;     // usage errors, unreadable input
inline constexpr int kExitScorerFailed = 3; // run aborted; partial report written

enum class ScorerKind { Ngram, Uniform, Remote };
enum class OutputFormat { Table, Json, Csv };

struct RunConfig {
  ScorerKind scorer = ScorerKind::Ngram;
  // ngram
  std::string corpus;
  int order = 3;
  std::vector<double> lambdas;  // empty: defaults for order 3
  // uniform
  std::size_t vocab_size = 0;
  // remote
  std::string endpoint;  // empty: $SYNGAUNTLET_ENDPOINT
  RetryPolicy retry;
  // selection
  std::vector<std::string> suite_paths;  // empty: the built-in suites
  std::vector<std::string> languages;
  std::vector<Circuit> circuits;
  // output
  OutputFormat format = OutputFormat::Table;
  std::string out;  // empty: stdout
  unsigned workers = 1;
};

/// Builds the configured scorer. Throws std::invalid_argument on a bad
/// configuration, ScorerError when a remote service cannot be probed.
std::shared_ptr<const Scorer> make_scorer(const RunConfig& config);

/// Every *.json under each path (files are taken as given), in path order,
/// directories walked in sorted order.
std::vector<std::string> expand_suite_paths(const std::vector<std::string>& paths);

/// Subcommands: validate, run, compare, list, export-suites. `args` excludes
/// the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace syngauntlet
