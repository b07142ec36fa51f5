#include "syngauntlet/remote.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "syngauntlet/error.hpp"
#include "syngauntlet/utf8.hpp"

namespace syngauntlet {

using nlohmann::json;

namespace {

ScorerError violation(const std::string& message) {
  return ScorerError(ScorerError::Kind::ProtocolViolation, message);
}

json parse_body(std::string_view body, std::string_view what) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw violation(std::string(what) + " body is not valid JSON");
  if (!doc.is_object()) throw violation(std::string(what) + " body is not an object");
  return doc;
}

std::size_t offset_field(const json& token, const char* key, std::size_t k) {
  auto it = token.find(key);
  if (it == token.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) {
    throw violation("token " + std::to_string(k) + ": '" + key + "' must be a non-negative integer");
  }
  return it->get<std::size_t>();
}

}  // namespace

std::chrono::milliseconds nominal_backoff(const RetryPolicy& policy, unsigned retry) {
  const double ms = static_cast<double>(policy.backoff_base.count()) * std::pow(policy.backoff_factor, retry);
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(ms)));
}

std::string fill_request_body(std::string_view text, FillMode mode) {
  json body = json::object();
  body["text"] = std::string(text);
  body["mode"] = mode == FillMode::Tokenize ? "tokenize" : "sequential_score";
  return body.dump();
}

FillResponse parse_fill_response(std::string_view body, std::string_view text, FillMode mode) {
  const json doc = parse_body(body, "score");
  FillResponse r;

  auto model = doc.find("model_id");
  if (model == doc.end() || !model->is_string()) throw violation("'model_id' missing or not a string");
  r.model_id = model->get<std::string>();

  auto tokens = doc.find("tokens");
  if (tokens == doc.end() || !tokens->is_array()) throw violation("'tokens' missing or not an array");
  if (tokens->empty()) throw violation("no tokens returned");

  const std::u32string chars = utf8::decode(text);
  std::vector<CharSpan> spans;
  for (std::size_t k = 0; k < tokens->size(); ++k) {
    const json& t = (*tokens)[k];
    if (!t.is_object()) throw violation("token " + std::to_string(k) + " is not an object");
    auto tt = t.find("text");
    if (tt == t.end() || !tt->is_string()) throw violation("token " + std::to_string(k) + ": 'text' missing");
    WireToken w{tt->get<std::string>(), offset_field(t, "start", k), offset_field(t, "end", k)};
    spans.push_back({w.char_start, w.char_end});
    r.tokens.push_back(std::move(w));
  }
  if (std::string problem = describe_cover_problem(text, spans); !problem.empty()) throw violation(problem);
  for (std::size_t k = 0; k < r.tokens.size(); ++k) {
    const WireToken& w = r.tokens[k];
    const std::string spanned = utf8::encode(std::u32string_view(chars).substr(w.char_start, w.char_end - w.char_start));
    if (spanned != w.text) {
      throw violation("token " + std::to_string(k) + " text '" + w.text + "' differs from spanned text '" + spanned + "'");
    }
  }

  auto bits = doc.find("surprisal_bits");
  if (mode == FillMode::Tokenize) {
    if (bits != doc.end()) throw violation("'surprisal_bits' present in tokenize mode");
    return r;
  }
  if (bits == doc.end() || !bits->is_array()) throw violation("'surprisal_bits' missing or not an array");
  if (bits->size() != r.tokens.size()) {
    throw violation(std::to_string(bits->size()) + " surprisals for " + std::to_string(r.tokens.size()) + " tokens");
  }
  for (std::size_t k = 0; k < bits->size(); ++k) {
    const json& b = (*bits)[k];
    if (!b.is_number()) throw violation("surprisal " + std::to_string(k) + " is not a number");
    const double v = b.get<double>();
    if (!std::isfinite(v) || v < 0.0) throw violation("surprisal " + std::to_string(k) + " is negative or not finite");
    r.surprisal_bits.push_back(v);
  }
  return r;
}

ServiceInfo parse_service_info(std::string_view body) {
  const json doc = parse_body(body, "info");
  ServiceInfo info;
  auto model = doc.find("model_id");
  if (model == doc.end() || !model->is_string()) throw violation("info: 'model_id' missing or not a string");
  info.model_id = model->get<std::string>();
  for (const char* key : {"vocabulary_size", "max_text_len"}) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) {
      throw violation(std::string("info: '") + key + "' must be a non-negative integer");
    }
  }
  info.vocabulary_size = doc.at("vocabulary_size").get<std::size_t>();
  info.max_text_len = doc.at("max_text_len").get<std::size_t>();
  return info;
}

// --- InFlightGate -------------------------------------------------------------

void InFlightGate::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return inside_ < limit_; });
  ++inside_;
}

void InFlightGate::release() {
  {
    std::lock_guard lock(mu_);
    --inside_;
  }
  cv_.notify_one();
}

// --- RemoteClient -------------------------------------------------------------

struct RemoteClient::Target {
  std::string origin;  // scheme://host:port
  std::string prefix;  // path prefix without trailing slash

  std::unique_ptr<httplib::Client> connect(std::chrono::milliseconds timeout) const {
    auto cli = std::make_unique<httplib::Client>(origin);
    cli->set_connection_timeout(timeout);
    cli->set_read_timeout(timeout);
    cli->set_write_timeout(timeout);
    cli->set_keep_alive(false);
    return cli;
  }
};

namespace {

struct Attempt {
  enum class Outcome { Ok, Transient, TimedOut, Rejected } outcome = Outcome::Ok;
  std::string body;
  std::string detail;
};

}  // namespace

RemoteClient::RemoteClient(std::string endpoint, RetryPolicy policy)
    : endpoint_(std::move(endpoint)),
      policy_(policy),
      target_(std::make_unique<Target>()),
      gate_(policy.max_in_flight),
      rng_(std::random_device{}()) {
  if (endpoint_.empty()) throw std::invalid_argument("empty endpoint");
  const std::size_t scheme = endpoint_.find("://");
  const std::size_t path = endpoint_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  target_->origin = endpoint_.substr(0, path);
  if (path != std::string::npos) target_->prefix = endpoint_.substr(path);
  while (!target_->prefix.empty() && target_->prefix.back() == '/') target_->prefix.pop_back();
}

RemoteClient::~RemoteClient() = default;

std::chrono::milliseconds RemoteClient::jittered_backoff(unsigned retry) const {
  const double nominal = static_cast<double>(nominal_backoff(policy_, retry).count());
  const double j = std::clamp(policy_.jitter, 0.0, 1.0);
  std::lock_guard lock(rng_mu_);
  std::uniform_real_distribution<double> spread(1.0 - j, 1.0 + j);
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(nominal * spread(rng_))));
}

FillResponse RemoteClient::request_score(std::string_view text, FillMode mode) const {
  require_text(text);
  const std::string body = fill_request_body(text, mode);
  const std::string path = target_->prefix + "/v1/score";

  auto attempt = [&]() -> Attempt {
    gate_.acquire();
    const auto started = std::chrono::steady_clock::now();
    httplib::Result res = target_->connect(policy_.timeout)->Post(path, body, "application/json");
    const auto elapsed = std::chrono::steady_clock::now() - started;
    gate_.release();

    if (!res) {
      const httplib::Error err = res.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read && elapsed >= policy_.timeout);
      return {timed_out ? Attempt::Outcome::TimedOut : Attempt::Outcome::Transient, {}, httplib::to_string(err)};
    }
    if (res->status >= 500) return {Attempt::Outcome::Transient, {}, "HTTP " + std::to_string(res->status)};
    if (res->status == 400 || res->status == 422) {
      return {Attempt::Outcome::Rejected, {}, "HTTP " + std::to_string(res->status) + ": " + res->body};
    }
    if (res->status != 200) return {Attempt::Outcome::Rejected, {}, "unexpected HTTP " + std::to_string(res->status)};
    return {Attempt::Outcome::Ok, std::move(res->body), {}};
  };

  bool all_timed_out = true;
  std::string last;
  for (unsigned k = 0; k <= policy_.max_retries; ++k) {
    if (k > 0) std::this_thread::sleep_for(jittered_backoff(k - 1));
    Attempt a = attempt();
    switch (a.outcome) {
      case Attempt::Outcome::Ok:
        return parse_fill_response(a.body, text, mode);
      case Attempt::Outcome::Rejected:
        throw ScorerError(ScorerError::Kind::RequestRejected, endpoint_ + ": " + a.detail);
      case Attempt::Outcome::TimedOut:
        break;
      case Attempt::Outcome::Transient:
        all_timed_out = false;
        break;
    }
    last = a.detail;
  }
  const std::string attempts = std::to_string(policy_.max_retries + 1) + " attempts";
  if (all_timed_out) {
    throw ScorerError(ScorerError::Kind::Timeout,
                      endpoint_ + ": no answer within " + std::to_string(policy_.timeout.count()) + " ms after " + attempts);
  }
  throw ScorerError(ScorerError::Kind::ScorerUnavailable, endpoint_ + ": " + attempts + " failed, last: " + last);
}

ServiceInfo RemoteClient::probe() const {
  gate_.acquire();
  httplib::Result res = target_->connect(policy_.timeout)->Get(target_->prefix + "/v1/info");
  gate_.release();
  if (!res) throw ScorerError(ScorerError::Kind::ScorerUnavailable, endpoint_ + ": " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw ScorerError(ScorerError::Kind::ScorerUnavailable, endpoint_ + ": info returned HTTP " + std::to_string(res->status));
  }
  return parse_service_info(res->body);
}

FillResponse request_score(const std::string& endpoint, std::string_view text, const RetryPolicy& policy) {
  return RemoteClient(endpoint, policy).request_score(text);
}

ServiceInfo probe(const std::string& endpoint, const RetryPolicy& policy) { return RemoteClient(endpoint, policy).probe(); }

// --- RemoteScorer -------------------------------------------------------------

RemoteScorer::RemoteScorer(std::shared_ptr<const RemoteClient> client, std::string id)
    : client_(std::move(client)), id_(std::move(id)) {
  if (!client_) throw std::invalid_argument("RemoteScorer needs a client");
  if (id_.empty()) id_ = "remote:" + client_->probe().model_id;
}

std::vector<ScoredToken> RemoteScorer::score(std::string_view text) const {
  FillResponse r = client_->request_score(text, FillMode::SequentialScore);
  std::vector<ScoredToken> out;
  out.reserve(r.tokens.size());
  for (std::size_t k = 0; k < r.tokens.size(); ++k) {
    WireToken& t = r.tokens[k];
    out.push_back({std::move(t.text), t.char_start, t.char_end, quantize_bits(r.surprisal_bits[k])});
  }
  return out;
}

}  // namespace syngauntlet
