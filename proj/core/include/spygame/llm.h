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

#ifndef SPYGAME_LLM_H_
#define SPYGAME_LLM_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spygame/error.h"

namespace spygame {

enum class ChatRole { kSystem, kUser, kAssistant };

std::string_view to_string(ChatRole role);

struct ChatMessage {
  ChatRole role = ChatRole::kUser;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

using Messages = std::vector<ChatMessage>;

// Where and how to reach one model. `credential` is "ENV:<VAR>" or empty for
// endpoints without auth.
struct BackendSpec {
  std::string provider = "openai";  // wire dialect: "openai" or "anthropic"
  std::string model;
  std::string endpoint;  // e.g. https://api.openai.com/v1/chat/completions
  std::string credential = "ENV:SPYGAME_API_KEY";
  std::chrono::milliseconds timeout{60000};
  double requests_per_second = 0;  // 0 = unlimited

  // Throws Error(kInvalidConfig) for a malformed endpoint or provider.
  void validate() const;
};

struct CompletionParams {
  double temperature = 0.0;  // greedy by default
  int max_tokens = 512;
  std::optional<std::int64_t> seed;

  void validate() const;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  double multiplier = 2.0;
  double jitter = 0.2;  // backoff scaled by a factor in [1 - j, 1 + j]

  // Delay before attempt `attempt + 1`, `attempt` counted from 1, before
  // jitter is applied.
  std::chrono::milliseconds backoff(int attempt) const;
};

// Resolves "ENV:<VAR>". Throws Error(kAuthError) if the variable is unset.
std::string resolve_credential(std::string_view reference);

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  virtual std::string label() const = 0;
  virtual std::string complete(const Messages& messages,
                               const CompletionParams& params) = 0;
};

// Spaces calls at least 1/rate apart. Thread-safe; no bursts.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);

  void acquire();
  double rate() const { return rate_; }

  // One limiter per provider key, created on first use.
  static std::shared_ptr<RateLimiter> shared(const std::string& key,
                                             double requests_per_second);

 private:
  double rate_;
  std::chrono::steady_clock::duration interval_{};
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_slot_{};
};

struct AttemptRecord {
  int attempt = 0;  // 1-based
  int status = 0;   // HTTP status, 0 when no response arrived
  std::optional<ErrorCode> error;
  std::chrono::milliseconds elapsed{0};
};

// Chat-completion JSON over HTTP(S).
class HttpChatModel : public ChatModel {
 public:
  using SleepFn = std::function<void(std::chrono::milliseconds)>;
  using AttemptObserver = std::function<void(const AttemptRecord&)>;

  HttpChatModel(BackendSpec spec, RetryPolicy retry = {},
                std::shared_ptr<RateLimiter> limiter = nullptr);

  std::string label() const override { return spec_.provider + ":" + spec_.model; }
  // Throws Error with kAuthError (no retry), kRateLimited, kTimeout,
  // kServerError (after retries) or kMalformedResponse.
  std::string complete(const Messages& messages,
                       const CompletionParams& params) override;

  void set_sleep(SleepFn sleep) { sleep_ = std::move(sleep); }
  void set_attempt_observer(AttemptObserver observer) {
    observer_ = std::move(observer);
  }
  std::uint64_t total_attempts() const { return total_attempts_.load(); }

  std::string request_body(const Messages& messages,
                           const CompletionParams& params) const;
  // Extracts the assistant text. Throws Error(kMalformedResponse).
  std::string parse_response(std::string_view body) const;

 private:
  BackendSpec spec_;
  RetryPolicy retry_;
  std::shared_ptr<RateLimiter> limiter_;
  SleepFn sleep_;
  AttemptObserver observer_;
  std::atomic<std::uint64_t> total_attempts_{0};
  std::mutex jitter_mu_;
  std::uint64_t jitter_state_ = 0x6a09e667f3bcc909ULL;
};

// Hex SHA-256 of the role-tagged, length-prefixed message list.
std::string messages_digest(const Messages& messages);

// Deterministic stand-in for a remote model.
class MockChatModel : public ChatModel {
 public:
  enum class Mode { kQueue, kDigest, kConstant, kEcho, kHeuristic };

  static std::unique_ptr<MockChatModel> queue(std::vector<std::string> replies);
  static std::unique_ptr<MockChatModel> digest(
      std::map<std::string, std::string> replies);
  static std::unique_ptr<MockChatModel> constant(std::string reply);
  static std::unique_ptr<MockChatModel> echo();
  // Answers game and evaluation prompts with well-formed, content-light
  // replies chosen from the message digest.
  static std::unique_ptr<MockChatModel> heuristic();

  // "queue=<json file>", "digest=<json file>", "const=<text>", "echo",
  // "heuristic". Throws Error(kInvalidConfig) / Error(kIoError).
  static std::unique_ptr<MockChatModel> from_spec(std::string_view spec);

  std::string label() const override;
  // Throws Error(kScriptExhausted) when the queue is drained or a digest has
  // no entry.
  std::string complete(const Messages& messages,
                       const CompletionParams& params) override;

  std::size_t calls() const;

 private:
  explicit MockChatModel(Mode mode) : mode_(mode) {}

  Mode mode_;
  std::vector<std::string> queue_;
  std::size_t next_ = 0;
  std::map<std::string, std::string> by_digest_;
  std::string constant_;
  std::size_t calls_ = 0;
  mutable std::mutex mu_;
};

std::string heuristic_reply(const Messages& messages);

// Wraps a model and remembers digest -> reply for every call, so a run can be
// replayed through MockChatModel::digest.
class RecordingChatModel : public ChatModel {
 public:
  explicit RecordingChatModel(std::shared_ptr<ChatModel> inner)
      : inner_(std::move(inner)) {}

  std::string label() const override { return inner_->label(); }
  std::string complete(const Messages& messages,
                       const CompletionParams& params) override;

  std::map<std::string, std::string> recorded() const;

 private:
  std::shared_ptr<ChatModel> inner_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> recorded_;
};

// Digest script files: {"format": "spygame-mock-script", "replies": {...}}.
void save_digest_script(const std::map<std::string, std::string>& replies,
                        const std::string& path);
std::map<std::string, std::string> load_digest_script(const std::string& path);

}  // namespace spygame

#endif  // SPYGAME_LLM_H_
