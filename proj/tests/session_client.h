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

#ifndef SPYGAME_TESTS_SESSION_CLIENT_H_
#define SPYGAME_TESTS_SESSION_CLIENT_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spygame/error.h"

namespace spygame::testing {

// Plays the human side of the protocol: answers each request in turn and
// keeps every frame it received.
class ReplayClient {
 public:
  using json = nlohmann::json;
  using Recv = std::function<std::optional<json>()>;
  using Send = std::function<void(const json&)>;

  ReplayClient(Recv recv, Send send) : recv_(std::move(recv)), send_(std::move(send)) {}

  int illegal_votes = 1;  // bogus vote_submits to make before a legal one

  void run() {
    send_({{"type", "join"}, {"token", "tok"}});
    for (;;) {
      std::optional<json> m;
      try {
        m = recv_();
      } catch (const Error&) {
        return;
      }
      if (!m) return;
      frames.push_back(*m);
      const std::string type = m->value("type", "");
      if (type == "game_over") return;
      if (type == "speak_request") {
        ++speak_count;
        send_({{"type", "speak_submit"},
               {"text", "human clue number " + std::to_string(speak_count)}});
      } else if (type == "vote_request") {
        if (illegal_votes > 0) {
          --illegal_votes;
          send_({{"type", "vote_submit"}, {"choice", "Nobody At All"}});
        } else {
          send_({{"type", "vote_submit"}, {"choice", (*m)["options"][0]}});
        }
      }
    }
  }

  std::vector<json> of_type(const std::string& type) const {
    std::vector<json> out;
    for (const auto& f : frames) {
      if (f.value("type", "") == type) out.push_back(f);
    }
    return out;
  }

  std::vector<json> frames;
  int speak_count = 0;

 private:
  Recv recv_;
  Send send_;
};

}  // namespace spygame::testing

#endif  // SPYGAME_TESTS_SESSION_CLIENT_H_
