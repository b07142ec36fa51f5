#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syngauntlet/error.hpp"
#include "syngauntlet/prediction.hpp"
#include "syngauntlet/scoring.hpp"
#include "syngauntlet/suite.hpp"

namespace syngauntlet {

struct ItemResult {
  int item_index = 0;
  std::vector<bool> predictions;  // one per suite prediction, in order
  bool passed = false;            // all predictions hold
  SurprisalTable surprisals;
};

struct SuiteResult {
  std::string name;
  Circuit circuit = Circuit::Agreement;
  std::string language;
  bool has_modifier = false;
  std::optional<std::string> modifier_pair_id;
  std::vector<ItemResult> items;
  double accuracy = 0.0;  // passed items / items
};

/// Mean accuracy of the suites sharing a modifier_pair_id, split by whether
/// they carry the modifier.
struct ModifierPair {
  std::string pair_id;
  double accuracy_without = 0.0;
  double accuracy_with = 0.0;
};

struct RunReport {
  std::string scorer_id;
  bool partial = false;   // set when the run was aborted by a scorer failure
  std::string abort_reason;
  std::vector<SuiteResult> suites;
  std::map<Circuit, double> circuit_means;
  std::map<std::string, double> language_means;
  double overall = 0.0;  // unweighted mean over suites
  std::vector<ModifierPair> modifier_pairs;
};

struct EvalOptions {
  unsigned workers = 1;
};

/// Thrown by evaluate_run when a scorer error stops the run. `partial()` holds
/// the suites that finished before the failure, flagged as partial.
class RunAborted : public Error {
 public:
  RunAborted(RunReport partial, ScorerError cause)
      : Error("run aborted: " + std::string(cause.what())), partial_(std::move(partial)), cause_(std::move(cause)) {}

  const RunReport& partial() const noexcept { return partial_; }
  const ScorerError& cause() const noexcept { return cause_; }

 private:
  RunReport partial_;
  ScorerError cause_;
};

/// Parses every prediction of a validated suite.
std::vector<PredictionAst> compile_predictions(const TestSuite& suite);

/// Renders, scores, aligns and tabulates every condition, then evaluates all
/// predictions. Scorer failures are rethrown with suite/item/condition context.
ItemResult evaluate_item(const TestSuite& suite, const Item& item, const Scorer& scorer);
ItemResult evaluate_item(const TestSuite& suite, std::span<const PredictionAst> predictions, const Item& item,
                         const Scorer& scorer);

/// The per-condition SurprisalTable for one item.
SurprisalTable tabulate_item(const TestSuite& suite, const Item& item, const Scorer& scorer);

SuiteResult evaluate_suite(const TestSuite& suite, const Scorer& scorer, const EvalOptions& options = {});

/// Evaluates every suite; suites are identified by (language, name), which
/// must be unique (DuplicateSuiteNameError). Aggregation happens in suite and
/// item order, so the report does not depend on `options.workers`.
RunReport evaluate_run(std::span<const TestSuite> suites, const Scorer& scorer, const EvalOptions& options = {});

/// Fills accuracy from item results.
void finalize_suite(SuiteResult& result);

/// Builds the aggregate fields (means, modifier pairs) from per-suite results.
RunReport aggregate_run(std::string scorer_id, std::vector<SuiteResult> suites);

}  // namespace syngauntlet
