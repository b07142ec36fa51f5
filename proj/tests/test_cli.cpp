#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "support/mock_service.hpp"
#include "support/test_util.hpp"
#include "syngauntlet/cli.hpp"
#include "syngauntlet/report.hpp"

using namespace syngauntlet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("syngauntlet-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  void write(const std::string& name, const std::string& content) const { std::ofstream(file(name)) << content; }

 private:
  fs::path path_;
};

std::string data(const std::string& rel) { return syngauntlet::testing::data_dir() + "/" + rel; }
std::string corpus() { return data("corpus/es_toy.txt"); }
std::string tie() { return data("fixtures/tie_fixture.json"); }

}  // namespace

TEST(Cli, ValidateShippedSuites) {
  const auto r = cli({"validate", data("es")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST(Cli, ValidateReportsBadSuite) {
  TempDir dir;
  auto doc = nlohmann::json::parse(syngauntlet::testing::read_text(tie()));
  doc["predictions"] = {"(9;match) < (2;mismatch)"};
  dir.write("bad.json", doc.dump());
  const auto r = cli({"validate", dir.file("bad.json")});
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_NE(r.out.find("DanglingRegionRef"), std::string::npos) << r.out;
}

TEST(Cli, ValidateMissingPath) {
  EXPECT_EQ(cli({"validate", "/nonexistent/suite.json"}).code, kExitBadInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitBadInput);
}

TEST(Cli, UniformScorerOnTieFixtureScoresZero) {
  const auto r = cli({"run", "--scorer", "uniform", "--vocab-size", "1000", "--format", "json", tie()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const RunReport report = report_from_json(r.out);
  ASSERT_EQ(report.suites.size(), 1u);
  EXPECT_EQ(report.suites[0].accuracy, 0.0);
}

TEST(Cli, NgramRunFiltersAndWritesFile) {
  TempDir dir;
  const auto r = cli({"run", "--corpus", corpus(), "--circuit", "center_embedding", "--language", "es", "--format", "csv",
                      "--out", dir.file("out.csv"), "--workers", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = syngauntlet::testing::read_text(dir.file("out.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);  // header + two suites
}

TEST(Cli, LambdasRequiredForOtherOrders) {
  EXPECT_EQ(cli({"run", "--corpus", corpus(), "--order", "2", tie()}).code, kExitBadInput);
  EXPECT_EQ(cli({"run", "--corpus", corpus(), "--order", "2", "--lambdas", "0.5,0.6", tie()}).code, kExitBadInput);
  EXPECT_EQ(cli({"run", "--corpus", corpus(), "--order", "2", "--lambdas", "0.7,0.3", tie()}).code, kExitOk);
}

TEST(Cli, ConfigFileWithFlagPrecedence) {
  TempDir dir;
  nlohmann::json cfg = {{"scorer", "uniform"}, {"vocab-size", 16}, {"format", "csv"}, {"suites", {tie()}}};
  dir.write("cfg.json", cfg.dump());
  auto r = cli({"run", "--config", dir.file("cfg.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("suite,circuit", 0), 0u);
  r = cli({"run", "--config", dir.file("cfg.json"), "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(report_from_json(r.out).scorer_id.rfind("uniform", 0), 0u);

  dir.write("unknown.json", R"({"scorer": "uniform", "colour": "blue"})");
  r = cli({"run", "--config", dir.file("unknown.json")});
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_NE(r.err.find("UnknownField"), std::string::npos) << r.err;
}

TEST(Cli, RemoteEndpointFromEnvironment) {
  syngauntlet::testing::MockFillService svc(BigramTable::load(data("mock/bigram.txt")));
  TempDir dir;
  TestSuite s;
  s.name = "Mock";
  s.language = "xx";
  s.condition_names = {"good", "bad"};
  s.region_names = {"first", "second"};
  s.predictions = {"(2;good) < (2;bad)"};
  for (int i = 1; i <= 2; ++i) s.items.push_back({i, {{"good", {{"a", "b"}}}, {"bad", {{"a", "a"}}}}});
  dir.write("mock.json", serialize_suite(s));

  ::setenv("SYNGAUNTLET_ENDPOINT", svc.endpoint().c_str(), 1);
  const auto r = cli({"run", "--scorer", "remote", "--format", "json", dir.file("mock.json")});
  ::unsetenv("SYNGAUNTLET_ENDPOINT");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const RunReport report = report_from_json(r.out);
  EXPECT_EQ(report.scorer_id, "remote:mock-bigram");
  EXPECT_EQ(report.overall, 1.0);

  const std::string dead = "http://127.0.0.1:" + std::to_string(syngauntlet::testing::unused_port());
  EXPECT_EQ(cli({"run", "--scorer", "remote", "--endpoint", dead, dir.file("mock.json")}).code, kExitScorerFailed);
}

TEST(Cli, CompareReports) {
  TempDir dir;
  auto write_report = [&](const std::string& name, std::vector<std::string> args) {
    args.insert(args.begin(), "run");
    args.push_back("--format");
    args.push_back("json");
    args.push_back("--out");
    args.push_back(dir.file(name));
    ASSERT_EQ(cli(args).code, kExitOk);
  };
  write_report("ngram.json", {"--corpus", corpus(), data("es")});
  write_report("uniform.json", {"--scorer", "uniform", "--vocab-size", "100", data("es")});
  write_report("tie.json", {"--scorer", "uniform", "--vocab-size", "100", tie()});

  auto r = cli({"compare", dir.file("ngram.json"), dir.file("uniform.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("ngram-k3"), std::string::npos);
  r = cli({"compare", "--languages", dir.file("ngram.json"), dir.file("uniform.json")});
  EXPECT_NE(r.out.find("Spanish"), std::string::npos);
  EXPECT_EQ(cli({"compare", dir.file("ngram.json"), dir.file("tie.json")}).code, kExitFailed);
  EXPECT_EQ(cli({"compare", dir.file("ngram.json")}).code, kExitBadInput);
}

TEST(Cli, ExportCheckDetectsStaleData) {
  EXPECT_EQ(cli({"export-suites", "--check", syngauntlet::testing::data_dir()}).code, kExitOk);
  TempDir dir;
  EXPECT_EQ(cli({"export-suites", "--check", dir.file("")}).code, kExitFailed);
  EXPECT_EQ(cli({"export-suites", dir.file("")}).code, kExitOk);
  EXPECT_EQ(cli({"export-suites", "--check", dir.file("")}).code, kExitOk);
}

TEST(Cli, ListShowsCatalog) {
  const auto r = cli({"list"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 26);
}
