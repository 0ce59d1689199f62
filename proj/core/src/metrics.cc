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

#include "spygame/metrics.h"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "spygame/error.h"

namespace spygame {
namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

PlayerId guest_of(const GameLog& log) {
  const ConfigRecord* config = log.config();
  if (config == nullptr) {
    throw Error(ErrorCode::kIncompleteLog, log.game_id + ": no config record");
  }
  return player(config->config.guest_index);
}

}  // namespace

GuestStats guest_stats(const GameLog& log) {
  const OutcomeRecord* outcome = log.outcome();
  if (outcome == nullptr) {
    throw Error(ErrorCode::kIncompleteLog, log.game_id + ": game has no outcome");
  }
  const PlayerId guest = guest_of(log);
  GuestStats stats;
  stats.win = outcome->winner == Team::kSpy;
  stats.round = outcome->rounds_played + 1;
  int alive_rounds = 0;
  int votes = 0;
  for (const auto& e : log.events) {
    const auto* elim = e.as<EliminationRecord>();
    if (elim == nullptr) continue;
    ++alive_rounds;
    if (auto it = elim->tally.find(guest); it != elim->tally.end()) votes += it->second;
    if (elim->player == guest) {
      stats.round = e.round;
      break;
    }
  }
  stats.voted = alive_rounds ? static_cast<double>(votes) / alive_rounds : 0.0;
  return stats;
}

MetricsReport compute_metrics(std::span<const GameLog> logs) {
  if (logs.empty()) throw Error(ErrorCode::kEmptyLogs, "no logs to score");
  MetricsReport report;
  for (const auto& log : logs) {
    GuestStats s = guest_stats(log);
    report.win += s.win ? 1.0 : 0.0;
    report.round += s.round;
    report.voted += s.voted;
  }
  report.games = static_cast<int>(logs.size());
  report.win /= report.games;
  report.round /= report.games;
  report.voted /= report.games;
  return report;
}

MetricsReport summarize(std::span<const GameLog> logs) {
  std::vector<GameLog> complete;
  int incomplete = 0;
  for (const auto& log : logs) {
    if (log.complete()) {
      complete.push_back(log);
    } else {
      ++incomplete;
    }
  }
  MetricsReport report;
  if (!complete.empty()) report = compute_metrics(complete);
  report.incomplete = incomplete;
  return report;
}

std::string direction_of(const GameLog& log) {
  const ConfigRecord* config = log.config();
  const Assignments* assignments = log.assignments();
  if (config == nullptr || assignments == nullptr) {
    throw Error(ErrorCode::kIncompleteLog, log.game_id + ": no assignment record");
  }
  const auto& spy_keyword = assignments->at(guest_of(log)).keyword;
  return spy_keyword == config->pair.word_a ? "a" : "b";
}

std::string format_metrics_table(
    const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  std::string out = "| Guest | Games | Win | Round | Voted |\n|---|---|---|---|---|\n";
  for (const auto& [label, r] : rows) {
    out += "| " + label + " | " + std::to_string(r.games) + " | " + fixed2(r.win) +
           " | " + fixed2(r.round) + " | " + fixed2(r.voted) + " |\n";
    if (r.incomplete > 0) {
      out += "| " + label + " (incomplete, excluded) | " +
             std::to_string(r.incomplete) + " | | | |\n";
    }
  }
  return out;
}

nlohmann::json to_json(const MetricsReport& r) {
  return nlohmann::json{{"games", r.games},
                        {"win", r.win},
                        {"round", r.round},
                        {"voted", r.voted},
                        {"incomplete", r.incomplete}};
}

}  // namespace spygame
