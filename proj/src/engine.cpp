#include "syngauntlet/engine.hpp"

#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "syngauntlet/alignment.hpp"

namespace syngauntlet {

std::vector<PredictionAst> compile_predictions(const TestSuite& suite) {
  std::vector<PredictionAst> out;
  out.reserve(suite.predictions.size());
  for (const std::string& source : suite.predictions) out.push_back(parse_prediction(source));
  return out;
}

SurprisalTable tabulate_item(const TestSuite& suite, const Item& item, const Scorer& scorer) {
  SurprisalTable table;
  const std::size_t region_count = suite.region_count();
  for (const std::string& condition : suite.condition_names) {
    const std::string context =
        "suite '" + suite.name + "', item " + std::to_string(item.index) + ", condition '" + condition + "'";
    const RenderedSentence rendered = render_sentence(item.sentences.at(condition));
    std::vector<ScoredToken> tokens;
    try {
      tokens = scorer.score(rendered.text);
    } catch (const ScorerError& e) {
      throw e.with_context(context);
    }
    RegionAssignment assignment;
    try {
      assignment = assign_regions(rendered.spans, tokens);
    } catch (const UnalignableTokenError& e) {
      throw ScorerError(ScorerError::Kind::ProtocolViolation, context + ": " + e.what());
    }
    region_surprisals(assignment, tokens, region_count, condition, table);
  }
  return table;
}

ItemResult evaluate_item(const TestSuite& suite, std::span<const PredictionAst> predictions, const Item& item,
                         const Scorer& scorer) {
  ItemResult result;
  result.item_index = item.index;
  result.surprisals = tabulate_item(suite, item, scorer);
  result.predictions.reserve(predictions.size());
  result.passed = true;
  for (const PredictionAst& p : predictions) {
    const bool holds = evaluate_prediction(p, result.surprisals);
    result.predictions.push_back(holds);
    result.passed = result.passed && holds;
  }
  return result;
}

ItemResult evaluate_item(const TestSuite& suite, const Item& item, const Scorer& scorer) {
  const auto predictions = compile_predictions(suite);
  return evaluate_item(suite, predictions, item, scorer);
}

void finalize_suite(SuiteResult& result) {
  std::size_t passed = 0;
  for (const ItemResult& item : result.items) passed += item.passed ? 1 : 0;
  result.accuracy = result.items.empty() ? 0.0 : static_cast<double>(passed) / static_cast<double>(result.items.size());
}

namespace {

SuiteResult suite_shell(const TestSuite& suite) {
  SuiteResult r;
  r.name = suite.name;
  r.circuit = suite.circuit;
  r.language = suite.language;
  r.has_modifier = suite.has_modifier;
  r.modifier_pair_id = suite.modifier_pair_id;
  return r;
}

double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

struct Task {
  std::size_t suite;
  std::size_t item;
};

// Runs fn(task_index) over [0, count) on up to `workers` threads. Stops
// handing out work after the first failure; returns that failure (the one
// with the lowest task index among those that failed).
template <typename Fn>
std::exception_ptr run_tasks(std::size_t count, unsigned workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr first_error;
  std::size_t first_index = count;

  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
        stop = true;
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(n);
    for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  }
  return first_error;
}

}  // namespace

SuiteResult evaluate_suite(const TestSuite& suite, const Scorer& scorer, const EvalOptions& options) {
  const auto predictions = compile_predictions(suite);
  SuiteResult result = suite_shell(suite);
  result.items.resize(suite.items.size());
  auto error = run_tasks(suite.items.size(), options.workers, [&](std::size_t i) {
    result.items[i] = evaluate_item(suite, predictions, suite.items[i], scorer);
  });
  if (error) std::rethrow_exception(error);
  finalize_suite(result);
  return result;
}

RunReport aggregate_run(std::string scorer_id, std::vector<SuiteResult> suites) {
  RunReport report;
  report.scorer_id = std::move(scorer_id);
  report.suites = std::move(suites);

  std::vector<double> all;
  std::map<Circuit, std::vector<double>> by_circuit;
  std::map<std::string, std::vector<double>> by_language;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> pairs;  // without, with
  std::vector<std::string> pair_order;
  for (const SuiteResult& s : report.suites) {
    all.push_back(s.accuracy);
    by_circuit[s.circuit].push_back(s.accuracy);
    by_language[s.language].push_back(s.accuracy);
    if (s.modifier_pair_id) {
      auto [it, inserted] = pairs.try_emplace(*s.modifier_pair_id);
      if (inserted) pair_order.push_back(*s.modifier_pair_id);
      (s.has_modifier ? it->second.second : it->second.first).push_back(s.accuracy);
    }
  }
  report.overall = mean(all);
  for (const auto& [circuit, values] : by_circuit) report.circuit_means[circuit] = mean(values);
  for (const auto& [language, values] : by_language) report.language_means[language] = mean(values);
  for (const std::string& id : pair_order) {
    const auto& [without, with] = pairs.at(id);
    if (without.empty() || with.empty()) continue;
    report.modifier_pairs.push_back({id, mean(without), mean(with)});
  }
  return report;
}

RunReport evaluate_run(std::span<const TestSuite> suites, const Scorer& scorer, const EvalOptions& options) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const TestSuite& s : suites) {
    if (!seen.insert({s.language, s.name}).second) throw DuplicateSuiteNameError(s.name);
  }

  std::vector<std::vector<PredictionAst>> predictions;
  std::vector<SuiteResult> results;
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < suites.size(); ++s) {
    predictions.push_back(compile_predictions(suites[s]));
    results.push_back(suite_shell(suites[s]));
    results.back().items.resize(suites[s].items.size());
    for (std::size_t i = 0; i < suites[s].items.size(); ++i) tasks.push_back({s, i});
  }

  std::vector<std::atomic<std::size_t>> done(suites.size());
  auto error = run_tasks(tasks.size(), options.workers, [&](std::size_t t) {
    const Task task = tasks[t];
    results[task.suite].items[task.item] =
        evaluate_item(suites[task.suite], predictions[task.suite], suites[task.suite].items[task.item], scorer);
    done[task.suite].fetch_add(1);
  });

  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const ScorerError& cause) {
      std::vector<SuiteResult> finished;
      for (std::size_t s = 0; s < suites.size(); ++s) {
        if (done[s].load() == suites[s].items.size()) {
          finalize_suite(results[s]);
          finished.push_back(std::move(results[s]));
        }
      }
      RunReport partial = aggregate_run(scorer.id(), std::move(finished));
      partial.partial = true;
      partial.abort_reason = cause.what();
      throw RunAborted(std::move(partial), cause);
    }
  }

  for (SuiteResult& r : results) finalize_suite(r);
  return aggregate_run(scorer.id(), std::move(results));
}

}  // namespace syngauntlet
