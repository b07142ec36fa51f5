#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "support/mock_service.hpp"
#include "support/test_util.hpp"
#include "syngauntlet/engine.hpp"
#include "syngauntlet/error.hpp"
#include "syngauntlet/remote.hpp"

using namespace syngauntlet;
using syngauntlet::testing::MockFillService;

namespace {

BigramTable table() { return BigramTable::load(syngauntlet::testing::data_dir() + "/mock/bigram.txt"); }

RetryPolicy fast(unsigned retries = 3) {
  RetryPolicy p;
  p.timeout = std::chrono::milliseconds(2000);
  p.max_retries = retries;
  p.backoff_base = std::chrono::milliseconds(1);
  return p;
}

std::optional<ScorerError::Kind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ScorerError& e) {
    return e.kind();
  }
  return std::nullopt;
}

std::string rewrite_json(const std::string& body, const std::function<void(nlohmann::json&)>& edit) {
  auto j = nlohmann::json::parse(body);
  edit(j);
  return j.dump();
}

// Runs the reveal loop on the client, one /v1/fill round trip per step.
class HttpFill final : public FillService {
 public:
  HttpFill(std::string endpoint, const MockBigramFill& local) : endpoint_(std::move(endpoint)), local_(local) {}
  std::string model_id() const override { return local_.model_id(); }
  std::size_t vocabulary_size() const override { return local_.vocabulary_size(); }
  std::vector<ServiceToken> tokenize(std::string_view text) const override { return local_.tokenize(text); }
  std::vector<double> fill(const FillQuery& q) const override {
    httplib::Client cli(endpoint_);
    nlohmann::json body = {{"slots", q.slots}, {"position", q.position}};
    auto res = cli.Post("/v1/fill", body.dump(), "application/json");
    if (!res || res->status != 200) throw ScorerError(ScorerError::Kind::ScorerUnavailable, "fill failed");
    return nlohmann::json::parse(res->body).at("probabilities").get<std::vector<double>>();
  }

 private:
  std::string endpoint_;
  const MockBigramFill& local_;
};

}  // namespace

TEST(Wire, RequestBody) {
  EXPECT_EQ(nlohmann::json::parse(fill_request_body("a b", FillMode::SequentialScore)),
            (nlohmann::json{{"text", "a b"}, {"mode", "sequential_score"}}));
  EXPECT_EQ(nlohmann::json::parse(fill_request_body("a", FillMode::Tokenize))["mode"], "tokenize");
}

TEST(Wire, ParsesHealthyResponse) {
  const auto r = parse_fill_response(
      R"({"model_id":"m","tokens":[{"text":"a","start":0,"end":1},{"text":"b","start":2,"end":3}],"surprisal_bits":[1.0,1.5]})",
      "a b", FillMode::SequentialScore);
  EXPECT_EQ(r.model_id, "m");
  ASSERT_EQ(r.tokens.size(), 2u);
  EXPECT_EQ(r.tokens[1], (WireToken{"b", 2, 3}));
  EXPECT_EQ(r.surprisal_bits, (std::vector<double>{1.0, 1.5}));
}

TEST(Wire, RejectsViolations) {
  const auto violation = [](const char* body, const char* text = "a b",
                            FillMode mode = FillMode::SequentialScore) {
    return kind_of([&] { parse_fill_response(body, text, mode); });
  };
  const auto pv = std::optional(ScorerError::Kind::ProtocolViolation);
  EXPECT_EQ(violation("not json"), pv);
  EXPECT_EQ(violation(R"({"tokens":[],"surprisal_bits":[]})"), pv);
  // overlapping spans
  EXPECT_EQ(violation(R"({"model_id":"m","tokens":[{"text":"a ","start":0,"end":2},{"text":" b","start":1,"end":3}],"surprisal_bits":[1,1]})"), pv);
  // uncovered character
  EXPECT_EQ(violation(R"({"model_id":"m","tokens":[{"text":"a","start":0,"end":1}],"surprisal_bits":[1]})"), pv);
  // text differs from span
  EXPECT_EQ(violation(R"({"model_id":"m","tokens":[{"text":"x","start":0,"end":1},{"text":"b","start":2,"end":3}],"surprisal_bits":[1,1]})"), pv);
  // length disagreement
  EXPECT_EQ(violation(R"({"model_id":"m","tokens":[{"text":"a","start":0,"end":1},{"text":"b","start":2,"end":3}],"surprisal_bits":[1]})"), pv);
  // negative surprisal
  EXPECT_EQ(violation(R"({"model_id":"m","tokens":[{"text":"a","start":0,"end":1},{"text":"b","start":2,"end":3}],"surprisal_bits":[1,-0.5]})"), pv);
  // surprisals in tokenize mode
  EXPECT_EQ(violation(R"({"model_id":"m","tokens":[{"text":"a","start":0,"end":1},{"text":"b","start":2,"end":3}],"surprisal_bits":[1,1]})",
                      "a b", FillMode::Tokenize),
            pv);
}

TEST(Wire, InfoDocument) {
  const auto info = parse_service_info(R"({"model_id":"m","vocabulary_size":10,"max_text_len":512})");
  EXPECT_EQ(info.vocabulary_size, 10u);
  EXPECT_EQ(kind_of([] { parse_service_info(R"({"model_id":"m"})"); }), ScorerError::Kind::ProtocolViolation);
}

TEST(Backoff, Exponential) {
  RetryPolicy p;
  EXPECT_EQ(nominal_backoff(p, 0).count(), 250);
  EXPECT_EQ(nominal_backoff(p, 1).count(), 500);
  EXPECT_EQ(nominal_backoff(p, 3).count(), 2000);
}

TEST(Remote, ScoresHealthySentenceWithChainRule) {
  MockFillService svc(table());
  RemoteClient client(svc.endpoint(), fast());
  const auto r = client.request_score("a b");
  ASSERT_EQ(r.tokens.size(), 2u);
  EXPECT_EQ(r.model_id, "mock-bigram");
  EXPECT_NEAR(r.surprisal_bits[0] + r.surprisal_bits[1], -std::log2(0.5) - std::log2(0.4), 1e-9);

  const auto tok = client.request_score("c a", FillMode::Tokenize);
  EXPECT_EQ(tok.tokens.size(), 2u);
  EXPECT_TRUE(tok.surprisal_bits.empty());
}

TEST(Remote, ScorerProbesModelId) {
  MockFillService svc(table());
  RemoteScorer scorer(std::make_shared<RemoteClient>(svc.endpoint(), fast()));
  EXPECT_EQ(scorer.id(), "remote:mock-bigram");
  const auto toks = scorer.score("a c b");
  EXPECT_EQ(toks[2].char_start, 4u);
}

TEST(Remote, ClientSideFillLoopAgreesWithServerLoop) {
  MockFillService svc(table());
  RemoteClient client(svc.endpoint(), fast());
  HttpFill http(svc.endpoint(), svc.fill());
  for (const char* text : {"a", "a b c", "c c a b a"}) {
    const auto server = client.request_score(text);
    const auto local = sequential_mlm_score(http, text);
    ASSERT_EQ(local.size(), server.tokens.size());
    for (std::size_t k = 0; k < local.size(); ++k) EXPECT_NEAR(local[k].surprisal_bits, server.surprisal_bits[k], 1e-12);
  }
  EXPECT_EQ(svc.fill_requests(), 1 + 3 + 5);
}

TEST(Remote, RetriesServerErrors) {
  MockFillService svc(table());
  svc.fail_next(2, 503);
  RemoteClient client(svc.endpoint(), fast(3));
  EXPECT_NO_THROW(client.request_score("a b"));
  EXPECT_EQ(svc.score_requests(), 3);
}

TEST(Remote, RetriesExhausted) {
  MockFillService svc(table());
  svc.fail_next(100, 500);
  RemoteClient client(svc.endpoint(), fast(2));
  EXPECT_EQ(kind_of([&] { client.request_score("a b"); }), ScorerError::Kind::ScorerUnavailable);
  EXPECT_EQ(svc.score_requests(), 3);
}

TEST(Remote, RejectionsAreNotRetried) {
  MockFillService svc(table());
  RemoteClient client(svc.endpoint(), fast(3));
  EXPECT_EQ(kind_of([&] { client.request_score("a zebra"); }), ScorerError::Kind::RequestRejected);
  EXPECT_EQ(svc.score_requests(), 1);
  svc.fail_next(1, 400);
  EXPECT_EQ(kind_of([&] { client.request_score("a"); }), ScorerError::Kind::RequestRejected);
  EXPECT_EQ(svc.score_requests(), 2);
}

TEST(Remote, ProtocolViolationsAreNotRetried) {
  MockFillService svc(table());
  svc.set_body_rewriter([](const std::string& body) {
    return rewrite_json(body, [](nlohmann::json& j) { j["tokens"][1]["start"] = 0; });
  });
  RemoteClient client(svc.endpoint(), fast(3));
  EXPECT_EQ(kind_of([&] { client.request_score("a b"); }), ScorerError::Kind::ProtocolViolation);
  EXPECT_EQ(svc.score_requests(), 1);
}

TEST(Remote, EmptyTextNeverSent) {
  MockFillService svc(table());
  RemoteClient client(svc.endpoint(), fast());
  EXPECT_EQ(kind_of([&] { client.request_score("  "); }), ScorerError::Kind::EmptyText);
  EXPECT_EQ(svc.score_requests(), 0);
}

TEST(Remote, InFlightBound) {
  MockFillService svc(table());
  svc.set_delay(std::chrono::milliseconds(40));
  RetryPolicy p = fast();
  p.max_in_flight = 2;
  RemoteClient client(svc.endpoint(), p);
  std::vector<std::jthread> threads;
  for (int t = 0; t < 8; ++t) threads.emplace_back([&] { client.request_score("a b"); });
  threads.clear();
  EXPECT_EQ(svc.score_requests(), 8);
  EXPECT_LE(svc.max_in_flight(), 2);
  EXPECT_GE(svc.max_in_flight(), 1);
}

TEST(Remote, TimeoutWhenEveryAttemptTimesOut) {
  MockFillService svc(table());
  svc.set_delay(std::chrono::milliseconds(600));
  RetryPolicy p = fast(1);
  p.timeout = std::chrono::milliseconds(150);
  RemoteClient client(svc.endpoint(), p);
  EXPECT_EQ(kind_of([&] { client.request_score("a b"); }), ScorerError::Kind::Timeout);
  EXPECT_EQ(svc.score_requests(), 2);
}

TEST(Remote, UnreachableEndpoint) {
  const std::string dead = "http://127.0.0.1:" + std::to_string(syngauntlet::testing::unused_port());
  RemoteClient client(dead, fast(1));
  EXPECT_EQ(kind_of([&] { client.request_score("a"); }), ScorerError::Kind::ScorerUnavailable);
  EXPECT_EQ(kind_of([&] { client.probe(); }), ScorerError::Kind::ScorerUnavailable);
}

TEST(Remote, MalformedInfo) {
  MockFillService svc(table());
  svc.set_info_body(R"({"model_id": 5})");
  RemoteClient client(svc.endpoint(), fast());
  EXPECT_EQ(kind_of([&] { client.probe(); }), ScorerError::Kind::ProtocolViolation);
}

TEST(Remote, EngineAbortsWhenServiceFails) {
  MockFillService svc(table());
  auto scorer = std::make_shared<RemoteScorer>(std::make_shared<RemoteClient>(svc.endpoint(), fast(0)), "remote");
  TestSuite s;
  s.name = "Mock";
  s.language = "xx";
  s.condition_names = {"good", "bad"};
  s.region_names = {"first", "second"};
  s.predictions = {"(2;good) < (2;bad)"};
  for (int i = 1; i <= 3; ++i) s.items.push_back({i, {{"good", {{"a", "b"}}}, {"bad", {{"a", "a"}}}}});
  EXPECT_EQ(evaluate_suite(s, *scorer).accuracy, 1.0);  // P(b|a) = 0.4 > P(a|a) = 0.1

  svc.fail_next(1, 503);
  const std::vector<TestSuite> suites = {s};
  EXPECT_THROW(evaluate_run(suites, *scorer), RunAborted);
}
