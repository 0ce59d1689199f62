// Copyright 2026 The SpyGame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spygame/llm.h"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "spygame/rng.h"
#include "spygame/text.h"

namespace spygame {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

std::optional<Endpoint> split_endpoint(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/\s:]+(:[0-9]+)?)(/\S*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) return std::nullopt;
  return Endpoint{m[1].str(), m[3].matched ? m[3].str() : "/"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool retryable(ErrorCode code) {
  return code == ErrorCode::kRateLimited || code == ErrorCode::kTimeout ||
         code == ErrorCode::kServerError;
}

}  // namespace

std::string_view to_string(ChatRole role) {
  switch (role) {
    case ChatRole::kSystem: return "system";
    case ChatRole::kUser: return "user";
    case ChatRole::kAssistant: return "assistant";
  }
  return "";
}

void BackendSpec::validate() const {
  if (provider != "openai" && provider != "anthropic") {
    throw Error(ErrorCode::kInvalidConfig, "unknown provider '" + provider + "'");
  }
  if (model.empty()) throw Error(ErrorCode::kInvalidConfig, "model name is empty");
  if (!split_endpoint(endpoint)) {
    throw Error(ErrorCode::kInvalidConfig, "malformed endpoint '" + endpoint + "'");
  }
  if (timeout.count() <= 0 || requests_per_second < 0) {
    throw Error(ErrorCode::kInvalidConfig, "timeout and rate must be positive");
  }
}

void CompletionParams::validate() const {
  if (temperature < 0) throw Error(ErrorCode::kInvalidConfig, "temperature < 0");
  if (max_tokens <= 0) throw Error(ErrorCode::kInvalidConfig, "max_tokens <= 0");
}

std::chrono::milliseconds RetryPolicy::backoff(int attempt) const {
  double ms = static_cast<double>(base_backoff.count());
  for (int i = 1; i < attempt; ++i) ms *= multiplier;
  ms = std::min(ms, static_cast<double>(max_backoff.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

std::string resolve_credential(std::string_view reference) {
  if (reference.empty()) return "";
  if (reference.substr(0, 4) != "ENV:") {
    throw Error(ErrorCode::kAuthError,
                "credential reference must be ENV:<VAR>, got '" +
                    std::string(reference) + "'");
  }
  const std::string var(reference.substr(4));
  const char* value = std::getenv(var.c_str());
  if (value == nullptr || *value == '\0') {
    throw Error(ErrorCode::kAuthError, "environment variable " + var + " is not set");
  }
  return value;
}

RateLimiter::RateLimiter(double requests_per_second) : rate_(requests_per_second) {
  if (rate_ > 0) {
    interval_ = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double>(1.0 / rate_));
  }
}

void RateLimiter::acquire() {
  if (rate_ <= 0) return;
  Clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    slot = std::max(Clock::now(), next_slot_);
    next_slot_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

std::shared_ptr<RateLimiter> RateLimiter::shared(const std::string& key,
                                                 double requests_per_second) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<RateLimiter>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[key];
  if (!slot) slot = std::make_shared<RateLimiter>(requests_per_second);
  return slot;
}

HttpChatModel::HttpChatModel(BackendSpec spec, RetryPolicy retry,
                             std::shared_ptr<RateLimiter> limiter)
    : spec_(std::move(spec)),
      retry_(retry),
      limiter_(std::move(limiter)),
      sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  spec_.validate();
  if (retry_.max_attempts < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_attempts must be at least 1");
  }
  if (!limiter_ && spec_.requests_per_second > 0) {
    limiter_ = RateLimiter::shared(spec_.provider + "|" + spec_.endpoint,
                                   spec_.requests_per_second);
  }
}

std::string HttpChatModel::request_body(const Messages& messages,
                                        const CompletionParams& params) const {
  json body;
  body["model"] = spec_.model;
  body["temperature"] = params.temperature;
  body["max_tokens"] = params.max_tokens;
  json msgs = json::array();
  if (spec_.provider == "anthropic") {
    std::string system;
    for (const auto& m : messages) {
      if (m.role == ChatRole::kSystem) {
        system += (system.empty() ? "" : "\n") + m.content;
      } else {
        msgs.push_back({{"role", to_string(m.role)}, {"content", m.content}});
      }
    }
    if (!system.empty()) body["system"] = system;
  } else {
    for (const auto& m : messages) {
      msgs.push_back({{"role", to_string(m.role)}, {"content", m.content}});
    }
    if (params.seed) body["seed"] = *params.seed;
  }
  body["messages"] = std::move(msgs);
  return body.dump();
}

std::string HttpChatModel::parse_response(std::string_view body) const {
  try {
    json j = json::parse(body);
    if (spec_.provider == "anthropic") {
      std::string out;
      for (const auto& block : j.at("content")) {
        if (block.value("type", "text") == "text") out += block.at("text").get<std::string>();
      }
      return out;
    }
    const auto& content = j.at("choices").at(0).at("message").at("content");
    return content.is_null() ? "" : content.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedResponse,
                label() + ": unexpected response body (" + e.what() + ")");
  }
}

std::string HttpChatModel::complete(const Messages& messages,
                                    const CompletionParams& params) {
  params.validate();
  const std::string key = resolve_credential(spec_.credential);
  const Endpoint ep = *split_endpoint(spec_.endpoint);
  const std::string body = request_body(messages, params);

  httplib::Headers headers;
  if (spec_.provider == "anthropic") {
    if (!key.empty()) headers.emplace("x-api-key", key);
    headers.emplace("anthropic-version", "2023-06-01");
  } else if (!key.empty()) {
    headers.emplace("Authorization", "Bearer " + key);
  }

  ErrorCode last = ErrorCode::kServerError;
  std::string last_detail;
  for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
    if (limiter_) limiter_->acquire();
    httplib::Client client(ep.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(spec_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        spec_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    const auto t0 = Clock::now();
    auto res = client.Post(ep.path, headers, body, "application/json");
    AttemptRecord record;
    record.attempt = attempt;
    record.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
    ++total_attempts_;

    std::optional<std::chrono::milliseconds> retry_after;
    if (!res) {
      const auto err = res.error();
      last = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
                 ? ErrorCode::kTimeout
                 : ErrorCode::kServerError;
      last_detail = httplib::to_string(err);
    } else {
      record.status = res->status;
      if (res->status >= 200 && res->status < 300) {
        if (observer_) observer_(record);
        return parse_response(res->body);
      }
      last_detail = "HTTP " + std::to_string(res->status);
      if (res->status == 401 || res->status == 403) {
        last = ErrorCode::kAuthError;
      } else if (res->status == 429) {
        last = ErrorCode::kRateLimited;
        if (res->has_header("Retry-After")) {
          try {
            retry_after = std::chrono::seconds(std::stoi(res->get_header_value("Retry-After")));
          } catch (const std::logic_error&) {
          }
        }
      } else if (res->status == 408) {
        last = ErrorCode::kTimeout;
      } else if (res->status >= 500) {
        last = ErrorCode::kServerError;
      } else {
        last = ErrorCode::kBackendFault;
      }
    }
    record.error = last;
    if (observer_) observer_(record);
    if (!retryable(last) || attempt == retry_.max_attempts) break;

    double factor = 1.0;
    if (retry_.jitter > 0) {
      std::uint64_t draw;
      {
        std::lock_guard lock(jitter_mu_);
        jitter_state_ += 0x9e3779b97f4a7c15ULL;
        draw = mix64(jitter_state_);
      }
      const double u = static_cast<double>(draw >> 11) * 0x1.0p-53;
      factor = 1.0 + retry_.jitter * (2.0 * u - 1.0);
    }
    auto delay = std::chrono::milliseconds(static_cast<std::int64_t>(
        static_cast<double>(retry_.backoff(attempt).count()) * factor));
    if (retry_after) delay = std::max(delay, *retry_after);
    sleep_(delay);
  }
  throw Error(last, label() + ": " + last_detail);
}

std::string messages_digest(const Messages& messages) {
  std::string canonical;
  for (const auto& m : messages) {
    canonical += to_string(m.role);
    canonical += '\n';
    canonical += std::to_string(m.content.size());
    canonical += '\n';
    canonical += m.content;
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::unique_ptr<MockChatModel> MockChatModel::queue(std::vector<std::string> replies) {
  if (replies.empty()) throw Error(ErrorCode::kInvalidConfig, "mock queue is empty");
  std::unique_ptr<MockChatModel> m(new MockChatModel(Mode::kQueue));
  m->queue_ = std::move(replies);
  return m;
}

std::unique_ptr<MockChatModel> MockChatModel::digest(
    std::map<std::string, std::string> replies) {
  if (replies.empty()) throw Error(ErrorCode::kInvalidConfig, "mock script is empty");
  std::unique_ptr<MockChatModel> m(new MockChatModel(Mode::kDigest));
  m->by_digest_ = std::move(replies);
  return m;
}

std::unique_ptr<MockChatModel> MockChatModel::constant(std::string reply) {
  std::unique_ptr<MockChatModel> m(new MockChatModel(Mode::kConstant));
  m->constant_ = std::move(reply);
  return m;
}

std::unique_ptr<MockChatModel> MockChatModel::echo() {
  return std::unique_ptr<MockChatModel>(new MockChatModel(Mode::kEcho));
}

std::unique_ptr<MockChatModel> MockChatModel::heuristic() {
  return std::unique_ptr<MockChatModel>(new MockChatModel(Mode::kHeuristic));
}

std::unique_ptr<MockChatModel> MockChatModel::from_spec(std::string_view spec) {
  const std::string s(spec);
  const auto eq = s.find('=');
  const std::string kind = s.substr(0, eq);
  const std::string arg = eq == std::string::npos ? "" : s.substr(eq + 1);
  if (kind == "echo") return echo();
  if (kind == "heuristic") return heuristic();
  if (kind == "const") return constant(arg);
  if (kind == "digest") return digest(load_digest_script(arg));
  if (kind == "queue") {
    try {
      return queue(json::parse(read_file(arg)).get<std::vector<std::string>>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, arg + ": " + e.what());
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown mock spec '" + s + "'");
}

std::string MockChatModel::label() const {
  switch (mode_) {
    case Mode::kQueue: return "mock:queue";
    case Mode::kDigest: return "mock:digest";
    case Mode::kConstant: return "mock:const";
    case Mode::kEcho: return "mock:echo";
    case Mode::kHeuristic: return "mock:heuristic";
  }
  return "mock";
}

std::size_t MockChatModel::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::string MockChatModel::complete(const Messages& messages,
                                    const CompletionParams& params) {
  params.validate();
  std::lock_guard lock(mu_);
  ++calls_;
  switch (mode_) {
    case Mode::kQueue:
      if (next_ >= queue_.size()) {
        throw Error(ErrorCode::kScriptExhausted,
                    "mock queue drained after " + std::to_string(queue_.size()) +
                        " replies");
      }
      return queue_[next_++];
    case Mode::kDigest: {
      const std::string d = messages_digest(messages);
      auto it = by_digest_.find(d);
      if (it == by_digest_.end()) {
        throw Error(ErrorCode::kScriptExhausted, "no scripted reply for digest " + d);
      }
      return it->second;
    }
    case Mode::kConstant: return constant_;
    case Mode::kEcho:
      for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
        if (it->role == ChatRole::kUser) return it->content;
      }
      return "";
    case Mode::kHeuristic: return heuristic_reply(messages);
  }
  return "";
}

namespace {

std::string between(const std::string& s, const std::string& open,
                    const std::string& close, std::size_t from = 0) {
  auto a = s.find(open, from);
  if (a == std::string::npos) return "";
  a += open.size();
  auto b = s.find(close, a);
  if (b == std::string::npos) return "";
  return s.substr(a, b - a);
}

std::vector<std::string> quoted_items(const std::string& list) {
  std::vector<std::string> out;
  static const std::regex item(R"('([^']*)')");
  for (auto it = std::sregex_iterator(list.begin(), list.end(), item);
       it != std::sregex_iterator(); ++it) {
    out.push_back((*it)[1].str());
  }
  return out;
}

}  // namespace

std::string heuristic_reply(const Messages& messages) {
  std::string system;
  std::string last;
  for (const auto& m : messages) {
    if (m.role == ChatRole::kSystem) system = m.content;
    if (m.role == ChatRole::kUser) last = m.content;
  }
  const std::string digest = messages_digest(messages);
  const std::uint64_t draw = std::stoull(digest.substr(0, 12), nullptr, 16);
  const std::string keyword = between(system, "Your keyword is \"", "\"");
  const std::string self = between(system, "You are ", ", one of");

  if (auto lb = last.rfind('['); lb != std::string::npos) {
    auto options = quoted_items(last.substr(lb));
    if (!options.empty()) return options[draw % options.size()];
  }
  if (last.find("identity=<spy or villager>") != std::string::npos) {
    auto pos = last.rfind("The players are: ");
    if (pos == std::string::npos) return "keyword=" + keyword + "; identity=villager";
    std::string list = last.substr(pos + 17);
    if (auto dot = list.find(".\n"); dot != std::string::npos) list.resize(dot);
    if (!list.empty() && list.back() == '.') list.pop_back();
    std::vector<std::string> names;
    for (auto& n : text::split(list, ',')) names.push_back(text::trim(n));
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] != self) others.push_back(i);
    }
    const std::size_t spy = others.empty() ? 0 : others[draw % others.size()];
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
      out += names[i] + ": keyword=" + keyword +
             "; identity=" + (i == spy ? "spy" : "villager") + "\n";
    }
    return out;
  }
  if (last.find("the other keyword") != std::string::npos) return "unknown";
  if (last.find("Describe your keyword") != std::string::npos ||
      last.find("description") != std::string::npos) {
    if (last.find("reply to numbers from 1 to 5") != std::string::npos) {
      return std::to_string(1 + draw % 5);
    }
    if (last.find("limit of 100 words") != std::string::npos) {
      return "A detailed and accurate account of the subject, with its defining traits.";
    }
    if (last.find("limit of 10 words") != std::string::npos) {
      return "Something many people know about.";
    }
    return "It reminds me of item " + digest.substr(0, 6) + ".";
  }
  if (last.find("candidate words") != std::string::npos) return "alpha, beta, gamma";
  if (last.find("number from 1 to 5") != std::string::npos) {
    return std::to_string(1 + draw % 5);
  }
  return last;
}

std::string RecordingChatModel::complete(const Messages& messages,
                                         const CompletionParams& params) {
  std::string reply = inner_->complete(messages, params);
  std::lock_guard lock(mu_);
  recorded_[messages_digest(messages)] = reply;
  return reply;
}

std::map<std::string, std::string> RecordingChatModel::recorded() const {
  std::lock_guard lock(mu_);
  return recorded_;
}

void save_digest_script(const std::map<std::string, std::string>& replies,
                        const std::string& path) {
  json j = {{"format", "spygame-mock-script"}, {"replies", replies}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

std::map<std::string, std::string> load_digest_script(const std::string& path) {
  try {
    json j = json::parse(read_file(path));
    if (j.value("format", "") != "spygame-mock-script") {
      throw Error(ErrorCode::kParseError, path + ": not a mock script");
    }
    return j.at("replies").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

}  // namespace spygame
