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

#ifndef SPYGAME_SESSION_H_
#define SPYGAME_SESSION_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spygame/agent.h"
#include "spygame/experiment.h"
#include "spygame/game.h"

namespace spygame {

// Message-framed JSON, one object per frame, each with "type" and "seq".
// Server -> client: game_init, phase, speech_event, speak_request,
// vote_request, vote_event, elimination, game_over, error.
// Client -> server: join (first frame, carries the token), speak_submit,
// vote_submit.
class SessionChannel {
 public:
  virtual ~SessionChannel() = default;
  virtual void send(const nlohmann::json& message) = 0;
  // nullopt on timeout. Throws Error(kClientDisconnected) once the peer is
  // gone and no message is pending.
  virtual std::optional<nlohmann::json> receive(
      std::optional<std::chrono::milliseconds> timeout) = 0;
  virtual void close() = 0;
};

// In-process duplex pipe; the two ends share one pair of queues.
class MemoryChannel : public SessionChannel {
 public:
  static std::pair<std::shared_ptr<MemoryChannel>, std::shared_ptr<MemoryChannel>>
  make_pair();

  void send(const nlohmann::json& message) override;
  std::optional<nlohmann::json> receive(
      std::optional<std::chrono::milliseconds> timeout) override;
  void close() override;

 private:
  struct Queue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<nlohmann::json> items;
    bool closed = false;
  };
  MemoryChannel(std::shared_ptr<Queue> in, std::shared_ptr<Queue> out)
      : in_(std::move(in)), out_(std::move(out)) {}

  std::shared_ptr<Queue> in_;
  std::shared_ptr<Queue> out_;
};

std::string rules_text();

// A seat played by a person on the other end of a channel. Only speaking
// and voting are asked of the human; guesses, reasoning and probes are
// skipped for this seat.
class HumanBackend : public AgentBackend {
 public:
  using Observer = std::function<void(const nlohmann::json&)>;

  explicit HumanBackend(std::shared_ptr<SessionChannel> channel,
                        std::optional<std::chrono::milliseconds> timeout = std::nullopt);

  std::string label() const override { return "human"; }
  bool handles(Action action) const override {
    return action == Action::kSpeak || action == Action::kVote;
  }
  std::optional<std::string> respond(const AgentContext& ctx,
                                     const AgentRequest& request) override;

  void on_game_start(const AgentContext& ctx) override;
  void on_phase(int round, Phase phase) override;
  void on_public_event(const HistoryEntry& entry) override;
  void on_game_over(const OutcomeRecord& outcome) override;
  void on_game_aborted(const std::string& reason) override;

  // Sees every outgoing message after its seq is assigned.
  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  void send(nlohmann::json message);
  // Waits for a message of `type`, answering anything else with an error.
  std::optional<nlohmann::json> await(const std::string& type);
  const std::string& name(PlayerId p) const;

  std::shared_ptr<SessionChannel> channel_;
  std::optional<std::chrono::milliseconds> timeout_;
  Observer observer_;
  std::vector<std::string> roster_;
  std::int64_t seq_ = 0;
};

struct SessionSetup {
  GameConfig config;
  KeywordPair pair;
  int human_seat = 1;
  // Specs for the other seats (see BackendFactory), one for all or one per
  // seat in seat order.
  std::vector<std::string> others{"scripted:generic"};
  std::string token;
  std::optional<std::chrono::milliseconds> turn_timeout;
  bool tom_probes = false;
  ContextInspector inspector;
};

// Checks the join frame, then plays one game with the human seat bound to
// `channel`. A disconnect ends the game as Aborted.
GameLog run_session(const SessionSetup& setup, std::shared_ptr<SessionChannel> channel,
                    BackendFactory& factory,
                    const HumanBackend::Observer& observer = nullptr);

// Websocket server: one game per connection, connections handled in turn.
class SessionServer {
 public:
  // port 0 picks a free port.
  SessionServer(std::uint16_t port, SessionSetup setup, BackendFactory& factory);
  ~SessionServer();

  std::uint16_t port() const;
  // Accepts one connection and plays its game to the end.
  GameLog serve_one();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace spygame

#endif  // SPYGAME_SESSION_H_
