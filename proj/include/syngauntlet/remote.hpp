#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "syngauntlet/scoring.hpp"

// Client side of the fill-service wire protocol.
//
//   POST /v1/score  {"text": "...", "mode": "sequential_score" | "tokenize"}
//     200 {"model_id": "...", "tokens": [{"text", "start", "end"}...],
//          "surprisal_bits": [...]}            (omitted for "tokenize")
//   GET  /v1/info   {"model_id", "vocabulary_size", "max_text_len"}
//
// Offsets count Unicode scalar values.

namespace syngauntlet {

enum class FillMode { Tokenize, SequentialScore };

struct RetryPolicy {
  std::chrono::milliseconds timeout{30000};  // per attempt, connect and read
  unsigned max_retries = 3;                  // attempts = 1 + max_retries
  unsigned max_in_flight = 4;
  std::chrono::milliseconds backoff_base{250};
  double backoff_factor = 2.0;
  double jitter = 0.5;  // delay drawn uniformly from [d(1-jitter), d(1+jitter)]
};

/// Delay before retry `retry` (0-based) without jitter: base * factor^retry.
std::chrono::milliseconds nominal_backoff(const RetryPolicy& policy, unsigned retry);

struct WireToken {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  bool operator==(const WireToken&) const = default;
};

struct FillResponse {
  std::string model_id;
  std::vector<WireToken> tokens;
  std::vector<double> surprisal_bits;  // empty in tokenize mode
};

struct ServiceInfo {
  std::string model_id;
  std::size_t vocabulary_size = 0;
  std::size_t max_text_len = 0;
};

std::string fill_request_body(std::string_view text, FillMode mode);

/// Parses and checks a /v1/score body against the text it answers. Throws
/// ScorerError(ProtocolViolation) on malformed JSON, missing fields, spans
/// that are unordered, overlapping, out of range or leave a non-space
/// character uncovered, token text that differs from the spanned text,
/// length disagreement, or negative / non-finite surprisals.
FillResponse parse_fill_response(std::string_view body, std::string_view text, FillMode mode);

/// Throws ScorerError(ProtocolViolation) when the body is not a valid info
/// document.
ServiceInfo parse_service_info(std::string_view body);

/// Blocks while `limit` holders are inside.
class InFlightGate {
 public:
  explicit InFlightGate(unsigned limit) : limit_(limit == 0 ? 1 : limit) {}
  void acquire();
  void release();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  unsigned limit_;
  unsigned inside_ = 0;
};

/// Thread-safe handle on one service. `endpoint` is "http://host:port" with
/// an optional path prefix.
class RemoteClient {
 public:
  explicit RemoteClient(std::string endpoint, RetryPolicy policy = {});
  ~RemoteClient();

  /// Retries transport failures and 5xx answers with backoff. Never retries
  /// protocol violations or 4xx. Throws ScorerError: ScorerUnavailable
  /// (retries exhausted), Timeout (every attempt timed out),
  /// RequestRejected (400 / 422), ProtocolViolation, EmptyText.
  FillResponse request_score(std::string_view text, FillMode mode = FillMode::SequentialScore) const;

  /// One attempt, no retries. ScorerUnavailable when unreachable.
  ServiceInfo probe() const;

  const std::string& endpoint() const noexcept { return endpoint_; }
  const RetryPolicy& policy() const noexcept { return policy_; }

 private:
  struct Target;
  std::chrono::milliseconds jittered_backoff(unsigned retry) const;

  std::string endpoint_;
  RetryPolicy policy_;
  std::unique_ptr<Target> target_;
  mutable InFlightGate gate_;
  mutable std::mutex rng_mu_;
  mutable std::mt19937_64 rng_;
};

FillResponse request_score(const std::string& endpoint, std::string_view text, const RetryPolicy& policy = {});
ServiceInfo probe(const std::string& endpoint, const RetryPolicy& policy = {});

/// Scorer that asks a remote fill service for sequential surprisals.
class RemoteScorer final : public Scorer {
 public:
  /// Empty `id` uses "remote:<model_id>" from a probe at construction.
  explicit RemoteScorer(std::shared_ptr<const RemoteClient> client, std::string id = {});

  const std::string& id() const noexcept override { return id_; }
  std::vector<ScoredToken> score(std::string_view text) const override;

 private:
  std::shared_ptr<const RemoteClient> client_;
  std::string id_;
};

}  // namespace syngauntlet
