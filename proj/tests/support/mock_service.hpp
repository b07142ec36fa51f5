#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "syngauntlet/mock_fill.hpp"

namespace httplib {
class Server;
}

namespace syngauntlet::testing {

/// In-process HTTP fill service over a bigram table, with fault injection
/// and in-flight instrumentation. Listens on 127.0.0.1 at a free port.
class MockFillService {
 public:
  explicit MockFillService(BigramTable table, std::string model_id = "mock-bigram");
  ~MockFillService();

  std::string endpoint() const;
  const MockBigramFill& fill() const noexcept { return fill_; }

  /// The next `count` score requests answer with `status` and no body.
  void fail_next(int count, int status = 503);
  /// Every score request sleeps this long before answering.
  void set_delay(std::chrono::milliseconds delay) { delay_ms_ = delay.count(); }
  /// Replaces the body of successful score answers; gets the honest body.
  void set_body_rewriter(std::function<std::string(const std::string&)> rewrite);
  void set_info_body(std::optional<std::string> body);

  int score_requests() const noexcept { return score_requests_.load(); }
  int max_in_flight() const noexcept { return max_in_flight_.load(); }
  int fill_requests() const noexcept { return fill_requests_.load(); }

 private:
  MockBigramFill fill_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;

  std::mutex mu_;
  int failures_left_ = 0;
  int failure_status_ = 503;
  std::function<std::string(const std::string&)> rewrite_;
  std::optional<std::string> info_body_;

  std::atomic<long long> delay_ms_{0};
  std::atomic<int> score_requests_{0};
  std::atomic<int> fill_requests_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

/// A port with nothing listening on it.
int unused_port();

}  // namespace syngauntlet::testing
