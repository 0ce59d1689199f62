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

#include "spygame/tom.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

#include "spygame/error.h"
#include "spygame/text.h"

namespace spygame {
namespace {

struct GameProbes {
  const ProbeRecord* guest_first = nullptr;
  const ProbeRecord* guest_second = nullptr;
  std::map<PlayerId, const ProbeRecord*> host_first;
};

GameProbes collect(const GameLog& log, PlayerId guest) {
  GameProbes out;
  for (const auto& e : log.events) {
    const auto* probe = e.as<ProbeRecord>();
    if (probe == nullptr || !e.actor) continue;
    if (probe->order == ProbeOrder::kFirst) {
      if (*e.actor == guest) {
        out.guest_first = probe;
      } else {
        out.host_first[*e.actor] = probe;
      }
    } else if (*e.actor == guest) {
      out.guest_second = probe;
    }
  }
  return out;
}

bool same_word(const std::string& a, const std::string& b) {
  return text::normalize(a) == text::normalize(b);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

ToMScores score_tom(std::span<const GameLog> logs, SecondOrderTruth truth) {
  if (logs.empty()) throw Error(ErrorCode::kEmptyLogs, "no logs to score");
  ToMScores s;
  for (const auto& log : logs) {
    const ConfigRecord* config = log.config();
    const Assignments* assignments = log.assignments();
    if (config == nullptr || assignments == nullptr) {
      throw Error(ErrorCode::kIncompleteLog, log.game_id + ": no config or assignment");
    }
    const PlayerId guest = player(config->config.guest_index);
    const GameProbes probes = collect(log, guest);
    if (probes.guest_first == nullptr || probes.guest_second == nullptr) {
      throw Error(ErrorCode::kMissingProbes, log.game_id + ": guest probes missing");
    }

    // First order: the guest's view of itself and of the others.
    const auto& first = probes.guest_first->first;
    if (first) {
      if (const auto* self = first->find(guest); self && self->identity == Role::kSpy) {
        s.self_identity += 1;
      }
      int others = 0;
      int words = 0;
      int identities = 0;
      for (const auto& [p, a] : *assignments) {
        if (p == guest) continue;
        const auto* entry = first->find(p);
        if (entry == nullptr) continue;  // not alive at probe time
        ++others;
        words += same_word(entry->keyword, a.keyword) ? 1 : 0;
        identities += entry->identity == a.role ? 1 : 0;
      }
      if (others > 0) {
        s.word1 += static_cast<double>(words) / others;
        s.identity1 += static_cast<double>(identities) / others;
      }
    }

    // Second order: the guest's prediction against the hosts' views of it.
    const auto& second = probes.guest_second->second;
    if (second && !probes.host_first.empty()) {
      if (truth == SecondOrderTruth::kPerHost) {
        int words = 0;
        int identities = 0;
        for (const auto& [host, probe] : probes.host_first) {
          const auto* about = probe->first ? probe->first->find(guest) : nullptr;
          if (about == nullptr) continue;
          words += same_word(about->keyword, second->keyword) ? 1 : 0;
          identities += about->identity == second->identity ? 1 : 0;
        }
        const auto hosts = static_cast<double>(probes.host_first.size());
        s.word2 += words / hosts;
        s.identity2 += identities / hosts;
      } else {
        std::map<std::string, int> word_votes;
        std::map<Role, int> role_votes;
        for (const auto& [host, probe] : probes.host_first) {
          const auto* about = probe->first ? probe->first->find(guest) : nullptr;
          if (about == nullptr) continue;
          ++word_votes[text::normalize(about->keyword)];
          ++role_votes[about->identity];
        }
        auto modal = [](const auto& votes, const auto& key) {
          int best = 0;
          for (const auto& [k, n] : votes) best = std::max(best, n);
          auto it = votes.find(key);
          return best > 0 && it != votes.end() && it->second == best;
        };
        s.word2 += modal(word_votes, text::normalize(second->keyword)) ? 1 : 0;
        s.identity2 += modal(role_votes, second->identity) ? 1 : 0;
      }
    }
    ++s.games;
  }
  const double n = s.games;
  s.self_identity /= n;
  s.word1 /= n;
  s.identity1 /= n;
  s.word2 /= n;
  s.identity2 /= n;
  return s;
}

std::string format_tom_table(const std::vector<std::pair<std::string, ToMScores>>& rows) {
  std::string out =
      "| Guest | Games | Self identity | Word1 | Identity1 | Word2 | Identity2 |\n"
      "|---|---|---|---|---|---|---|\n";
  for (const auto& [label, s] : rows) {
    out += "| " + label + " | " + std::to_string(s.games) + " | " +
           fixed2(s.self_identity) + " | " + fixed2(s.word1) + " | " +
           fixed2(s.identity1) + " | " + fixed2(s.word2) + " | " +
           fixed2(s.identity2) + " |\n";
  }
  return out;
}

nlohmann::json to_json(const ToMScores& s) {
  return nlohmann::json{{"games", s.games},         {"self_identity", s.self_identity},
                        {"word1", s.word1},         {"identity1", s.identity1},
                        {"word2", s.word2},         {"identity2", s.identity2}};
}

}  // namespace spygame
