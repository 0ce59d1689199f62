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

#ifndef SPYGAME_TOM_H_
#define SPYGAME_TOM_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spygame/events.h"

namespace spygame {

struct ToMScores {
  int games = 0;
  double self_identity = 0;
  double word1 = 0;
  double identity1 = 0;
  double word2 = 0;
  double identity2 = 0;
};

enum class SecondOrderTruth {
  // Fraction of hosts whose first-order guess about the guest matches the
  // guest's prediction.
  kPerHost,
  // 1 when the prediction is among the most common host guesses, else 0.
  kMajority,
};

// Scores the guest seat from the probe records of each log. Keywords are
// compared after normalization. Invalid guest or host probes count as wrong
// (per-host mode); majority mode ignores invalid host probes. Throws
// Error(kEmptyLogs) or Error(kMissingProbes) when a log lacks the guest's
// probes.
ToMScores score_tom(std::span<const GameLog> logs,
                    SecondOrderTruth truth = SecondOrderTruth::kPerHost);

std::string format_tom_table(const std::vector<std::pair<std::string, ToMScores>>& rows);
nlohmann::json to_json(const ToMScores& scores);

}  // namespace spygame

#endif  // SPYGAME_TOM_H_
