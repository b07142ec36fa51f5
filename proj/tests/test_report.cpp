#include <gtest/gtest.h>

#include <sstream>

#include "support/test_util.hpp"
#include "syngauntlet/error.hpp"
#include "syngauntlet/report.hpp"
#include "syngauntlet/suite_data.hpp"

using namespace syngauntlet;

namespace {

SuiteResult suite_result(std::string name, std::string language, double accuracy, Circuit c = Circuit::Agreement) {
  SuiteResult s;
  s.name = std::move(name);
  s.language = std::move(language);
  s.circuit = c;
  s.accuracy = accuracy;
  return s;
}

// Model, English, Spanish as printed in the published comparison table.
struct Row {
  const char* model;
  std::optional<double> en, es;
};
const Row kTable[] = {
    {"BERT", 0.7780, std::nullopt},  {"RoBERTa", 0.8204, std::nullopt}, {"mBERT", 0.7755, 0.7231},
    {"XLM-R", 0.7184, 0.7850},       {"BETO", std::nullopt, 0.6792},
};

std::vector<RunReport> table_reports() {
  std::vector<RunReport> out;
  for (const Row& row : kTable) {
    std::vector<SuiteResult> suites;
    if (row.en) suites.push_back(suite_result("Suite", "en", *row.en));
    if (row.es) suites.push_back(suite_result("Suite", "es", *row.es));
    out.push_back(aggregate_run(row.model, suites));
  }
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

RunReport oracle_report() {
  std::vector<SuiteResult> results;
  for (const auto& def : shipped_suite_definitions()) {
    const TestSuite s = def.build();
    results.push_back(evaluate_suite(s, *build_oracle(s, def.grades)));
  }
  return aggregate_run("oracle", results);
}

}  // namespace

TEST(Format, Percent) {
  EXPECT_EQ(format_percent(0.778), "77.80");
  EXPECT_EQ(format_percent(0.8204), "82.04");
  EXPECT_EQ(format_percent(1.0), "100.00");
  EXPECT_EQ(format_percent(0.0), "0.00");
}

TEST(Format, LanguageSummaryReproducesPublishedTable) {
  const auto reports = table_reports();
  const std::string text = format_language_summary(reports);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(words(line), (std::vector<std::string>{"Model", "English", "Spanish"}));
  const std::vector<std::vector<std::string>> expected = {
      {"BERT", "77.80", "---"},   {"RoBERTa", "82.04", "---"}, {"mBERT", "77.55", "72.31"},
      {"XLM-R", "71.84", "78.50"}, {"BETO", "---", "67.92"},
  };
  for (const auto& want : expected) {
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(words(line), want);
  }
}

TEST(Json, RoundTripAndStableBytes) {
  const RunReport r = oracle_report();
  const std::string doc = report_to_json(r);
  const RunReport back = report_from_json(doc);
  EXPECT_EQ(report_to_json(back), doc);
  EXPECT_EQ(back.suites.size(), r.suites.size());
  EXPECT_EQ(back.overall, 1.0);
}

TEST(Json, RejectsMalformed) {
  EXPECT_THROW(report_from_json("{"), DocumentError);
  EXPECT_THROW(report_from_json("{\"scorer_id\": 3}"), DocumentError);
}

TEST(Csv, OneRowPerSuite) {
  const RunReport r = aggregate_run("x", {suite_result("A, quoted", "es", 0.5), suite_result("B", "en", 0.25)});
  EXPECT_EQ(report_to_csv(r),
            "suite,circuit,language,has_modifier,accuracy\n"
            "\"A, quoted\",agreement,es,false,0.5\n"
            "B,agreement,en,false,0.25\n");
}

TEST(Table, ShowsCircuitsOverallAndPairs) {
  const std::string t = report_to_table(oracle_report());
  EXPECT_NE(t.find("Center Embedding"), std::string::npos);
  EXPECT_NE(t.find("overall"), std::string::npos);
  EXPECT_NE(t.find("modifier pairs"), std::string::npos);
  EXPECT_NE(t.find("Spanish"), std::string::npos);
}

TEST(Compare, SingleReportHasOneColumn) {
  const RunReport r = oracle_report();
  const auto table = compare_runs(std::span<const RunReport>(&r, 1));
  EXPECT_EQ(table.columns, (std::vector<std::string>{"oracle"}));
  for (const auto& row : table.rows) EXPECT_EQ(row.values.size(), 1u);
  EXPECT_EQ(table.rows.back().kind, ComparisonRow::Kind::Overall);
}

TEST(Compare, DisjointSuiteSetsRejected) {
  const std::vector<RunReport> reports = {aggregate_run("a", {suite_result("A", "es", 0.5)}),
                                          aggregate_run("b", {suite_result("B", "es", 0.5)})};
  EXPECT_THROW(compare_runs(reports), SuiteSetMismatchError);
  const std::vector<RunReport> unlinked = {aggregate_run("a", {suite_result("A", "es", 0.5)}),
                                           aggregate_run("b", {suite_result("A", "en", 0.5)})};
  EXPECT_THROW(compare_runs(unlinked), SuiteSetMismatchError);
}

TEST(Compare, MissingLanguageShownAsDash) {
  const auto reports = table_reports();
  const auto table = compare_runs(reports);
  const auto& english = *std::find_if(table.rows.begin(), table.rows.end(), [](const ComparisonRow& r) {
    return r.kind == ComparisonRow::Kind::Language && r.language == "en";
  });
  EXPECT_FALSE(english.values[4].has_value());
  EXPECT_DOUBLE_EQ(*english.values[0], 0.7780);
  EXPECT_NE(format_comparison(table).find("---"), std::string::npos);
}
