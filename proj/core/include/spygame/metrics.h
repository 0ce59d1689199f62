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

#ifndef SPYGAME_METRICS_H_
#define SPYGAME_METRICS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spygame/events.h"

namespace spygame {

// Per-game view of the guest seat.
struct GuestStats {
  bool win = false;  // the spy team won
  // Round the guest was voted out in, or rounds_played + 1 when it was never
  // voted out (one credited extra round).
  int round = 0;
  // Mean votes received per round the guest was alive to be voted on.
  double voted = 0;
};

// Throws Error(kIncompleteLog) if the log has no Outcome.
GuestStats guest_stats(const GameLog& log);

struct MetricsReport {
  int games = 0;
  double win = 0;
  double round = 0;
  double voted = 0;
  int incomplete = 0;  // logs skipped by summarize()
};

// Means over games. Throws Error(kEmptyLogs) for no logs and
// Error(kIncompleteLog) if any log is incomplete.
MetricsReport compute_metrics(std::span<const GameLog> logs);

// Like compute_metrics, but skips and counts incomplete logs.
MetricsReport summarize(std::span<const GameLog> logs);

// "a" when the spies held word_a, "b" otherwise.
std::string direction_of(const GameLog& log);

// Markdown table with Win / Round / Voted columns, two decimals.
std::string format_metrics_table(
    const std::vector<std::pair<std::string, MetricsReport>>& rows);
nlohmann::json to_json(const MetricsReport& report);

}  // namespace spygame

#endif  // SPYGAME_METRICS_H_
