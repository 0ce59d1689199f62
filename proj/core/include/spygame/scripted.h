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

#ifndef SPYGAME_SCRIPTED_H_
#define SPYGAME_SCRIPTED_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "spygame/agent.h"
#include "spygame/events.h"
#include "spygame/types.h"

namespace spygame {

// Deterministic agent behaviour, one choice per action. Written as a spec
// string of '+'-joined tokens, e.g. "dots+first" or "truth+target=3":
//
//   speech:    generic (default) | dots | echo=<file>
//   vote:      uniform (default) | first | target=<seat> | lowest-villager | spy
//   reasoning: naive (default) | truth
//   guess:     guess=<word>                  (default "unknown")
//   probe 2:   second=<keyword>:<spy|villager> (default own keyword, villager)
//
// "truth", "lowest-villager" and "spy" read the ground-truth assignments and
// exist only to build reference games.
struct ScriptedPolicy {
  enum class Speech { kGeneric, kDots, kTable };
  enum class Vote { kUniform, kFirst, kTarget, kLowestVillager, kSpy };
  enum class Reasoning { kNaive, kTruth };

  Speech speech = Speech::kGeneric;
  std::map<std::pair<int, int>, std::string> table;  // (seat, round) -> text
  Vote vote = Vote::kUniform;
  int target = 0;
  Reasoning reasoning = Reasoning::kNaive;
  std::string guess = "unknown";
  std::optional<SecondOrderInference> second;

  bool needs_truth() const;
};

// Throws Error(kInvalidConfig) for unknown tokens, Error(kIoError) for an
// unreadable echo table.
ScriptedPolicy parse_scripted_policy(std::string_view spec);

// Echo table file: "<seat>\t<round>\t<text>" per line, '#' comments.
std::map<std::pair<int, int>, std::string> load_echo_table(const std::string& path);

// Every reply is a pure function of (policy, seed, context, request).
class ScriptedBackend : public AgentBackend {
 public:
  ScriptedBackend(ScriptedPolicy policy, std::uint64_t seed,
                  std::optional<Assignments> truth = std::nullopt,
                  std::string label = "scripted");

  std::string label() const override { return label_; }
  std::optional<std::string> respond(const AgentContext& ctx,
                                     const AgentRequest& request) override;

 private:
  std::string speak(const AgentContext& ctx, const AgentRequest& request) const;
  std::string vote(const AgentContext& ctx, const AgentRequest& request) const;
  std::string reason(const AgentContext& ctx) const;
  std::string second_order(const AgentContext& ctx) const;

  ScriptedPolicy policy_;
  std::uint64_t seed_;
  std::optional<Assignments> truth_;
  std::string label_;
};

// Formats an inference in the reply grammar parse_first_order accepts.
std::string format_first_order(const FirstOrderInference& inference,
                               const std::vector<std::string>& roster);
std::string format_second_order(const SecondOrderInference& inference);

}  // namespace spygame

#endif  // SPYGAME_SCRIPTED_H_
