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

#ifndef SPYGAME_DEEP_H_
#define SPYGAME_DEEP_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spygame/llm.h"
#include "spygame/prompts.h"
#include "spygame/types.h"

namespace spygame {

struct DeepItem {
  std::string target;
  std::vector<std::string> distractors;
  std::string language = "en";
  std::string domain;

  // Throws Error(kInvalidConfig) on an empty target, no distractors, or a
  // distractor equal to the target after normalization.
  void validate() const;
};

// "target<TAB>d1,d2,...<TAB>language<TAB>domain" per line, '#' comments.
// Throws Error(kParseError) with the 1-based line number.
std::vector<DeepItem> parse_deep_items(std::string_view text);
std::vector<DeepItem> load_deep_items(const std::string& path);

// Each word of a keyword pair becomes a target with its partner as the only
// distractor.
std::vector<DeepItem> deep_items_from_pairs(const std::vector<KeywordPair>& pairs);

enum class DeepMode { kAggressive, kConservative };

std::string_view to_string(DeepMode mode);

struct Description {
  std::string word;
  DeepMode mode = DeepMode::kAggressive;
  std::string text;
  int word_limit = 100;
  int word_count = 0;
  bool over_limit = false;
  bool empty = false;  // still empty after one re-prompt
  // Conservative only: the candidate list from the first step.
  std::vector<std::string> candidates;
  std::string candidates_raw;
  bool candidates_empty = false;
};

Description describe_aggressive(ChatModel& model, std::string_view word,
                                const CompletionParams& params = {},
                                const PromptCatalog& catalog = PromptCatalog::builtin());

// Two steps in one conversation: candidate words, then a short description
// of what they have in common.
Description describe_conservative(ChatModel& model, std::string_view word,
                                  const CompletionParams& params = {},
                                  const PromptCatalog& catalog = PromptCatalog::builtin());

// The first integer token whose value lies in [1, 5].
std::optional<int> parse_judgement(std::string_view reply);

// Throws Error(kUnparseableJudgement) after `max_reprompts` failed retries.
int judge_match(ChatModel& judge, std::string_view description, std::string_view word,
                int max_reprompts = 3, const CompletionParams& params = {},
                const PromptCatalog& catalog = PromptCatalog::builtin());

struct Judgement {
  std::size_t item = 0;
  DeepMode mode = DeepMode::kAggressive;
  bool is_target = true;
  std::string word;
  int score = 0;
};

struct DeepCell {
  double target_mean = 0;
  double distractor_mean = 0;
  int target_count = 0;
  int distractor_count = 0;
};

struct DeepReport {
  std::string model;
  DeepCell aggressive;
  DeepCell conservative;
  std::vector<Description> descriptions;
  std::vector<Judgement> judgements;
  int over_limit = 0;
  std::string judge;  // judge label
  CompletionParams describe_params;
  CompletionParams judge_params;

  const DeepCell& cell(DeepMode mode) const {
    return mode == DeepMode::kAggressive ? aggressive : conservative;
  }
};

// Arithmetic means over all judged pairs in each (mode, target/distractor)
// cell. Order-independent.
DeepReport aggregate(std::string model, std::vector<Judgement> judgements);

struct DeepOptions {
  CompletionParams describe_params;
  CompletionParams judge_params;
  int max_reprompts = 3;
  int parallelism = 1;
};

// Throws Error(kInvalidConfig) for an empty item list.
DeepReport score_model(ChatModel& model, ChatModel& judge,
                       const std::vector<DeepItem>& items,
                       const DeepOptions& options = {},
                       const PromptCatalog& catalog = PromptCatalog::builtin());

// Markdown table: one row per model, four score columns.
std::string format_deep_table(const std::vector<DeepReport>& reports);
nlohmann::json to_json(const DeepReport& report);

}  // namespace spygame

#endif  // SPYGAME_DEEP_H_
