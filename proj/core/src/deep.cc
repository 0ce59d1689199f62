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

#include "spygame/deep.h"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spygame/error.h"
#include "spygame/parallel.h"
#include "spygame/text.h"

namespace spygame {
namespace {

constexpr int kAggressiveLimit = 100;
constexpr int kConservativeLimit = 10;

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Comma- or line-separated, with optional "-", "*" or "1." markers.
std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (auto& line : text::split(s, '\n')) {
    for (auto& part : text::split(line, ',')) {
      std::string t = text::trim(part);
      std::size_t i = 0;
      while (i < t.size() && (t[i] == '-' || t[i] == '*')) ++i;
      std::size_t j = i;
      while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
      if (j > i && j < t.size() && (t[j] == '.' || t[j] == ')')) i = j + 1;
      t = text::trim(std::string_view(t).substr(i));
      while (!t.empty() && (t.back() == '.' || t.back() == ';')) t.pop_back();
      if (!t.empty()) out.push_back(std::move(t));
    }
  }
  return out;
}

void finish(Description& d) {
  d.text = text::trim(d.text);
  d.empty = d.text.empty();
  d.word_count = text::word_count(d.text);
  d.over_limit = d.word_count > d.word_limit;
}

// Asks until a non-empty reply, with one retry.
std::string ask_nonempty(ChatModel& model, Messages& messages,
                         const CompletionParams& params, const PromptCatalog& catalog) {
  std::string reply = model.complete(messages, params);
  if (!text::trim(reply).empty()) return reply;
  messages.push_back({ChatRole::kAssistant, reply});
  messages.push_back({ChatRole::kUser, catalog.render("feedback.empty", {})});
  return model.complete(messages, params);
}

}  // namespace

void DeepItem::validate() const {
  if (text::trim(target).empty()) {
    throw Error(ErrorCode::kInvalidConfig, "empty target word");
  }
  if (distractors.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "'" + target + "' has no distractors");
  }
  const std::string t = text::normalize(target);
  for (const auto& d : distractors) {
    if (text::normalize(d) == t) {
      throw Error(ErrorCode::kInvalidConfig,
                  "'" + target + "' is listed as its own distractor");
    }
  }
}

std::vector<DeepItem> parse_deep_items(std::string_view input) {
  std::vector<DeepItem> items;
  int line_no = 0;
  for (auto& line : text::split(input, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() < 2 || fields.size() > 4) {
      throw Error(ErrorCode::kParseError,
                  "expected target, distractors, language, domain", line_no);
    }
    DeepItem item;
    item.target = text::trim(fields[0]);
    item.distractors = split_list(fields[1]);
    if (fields.size() > 2 && !text::trim(fields[2]).empty()) {
      item.language = text::trim(fields[2]);
    }
    if (fields.size() > 3) item.domain = text::trim(fields[3]);
    try {
      item.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, e.what(), line_no);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<DeepItem> load_deep_items(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_deep_items(buf.str());
}

std::vector<DeepItem> deep_items_from_pairs(const std::vector<KeywordPair>& pairs) {
  std::vector<DeepItem> items;
  for (const auto& p : pairs) {
    items.push_back({p.word_a, {p.word_b}, p.language, p.domain});
    items.push_back({p.word_b, {p.word_a}, p.language, p.domain});
  }
  return items;
}

std::string_view to_string(DeepMode mode) {
  return mode == DeepMode::kAggressive ? "aggressive" : "conservative";
}

Description describe_aggressive(ChatModel& model, std::string_view word,
                                const CompletionParams& params,
                                const PromptCatalog& catalog) {
  Description d;
  d.word = std::string(word);
  d.mode = DeepMode::kAggressive;
  d.word_limit = kAggressiveLimit;
  Messages messages{
      {ChatRole::kUser, catalog.render("deep.aggressive", {{"word", d.word}})}};
  d.text = ask_nonempty(model, messages, params, catalog);
  finish(d);
  return d;
}

Description describe_conservative(ChatModel& model, std::string_view word,
                                  const CompletionParams& params,
                                  const PromptCatalog& catalog) {
  Description d;
  d.word = std::string(word);
  d.mode = DeepMode::kConservative;
  d.word_limit = kConservativeLimit;
  Messages messages{{ChatRole::kUser,
                     catalog.render("deep.conservative.candidates", {{"word", d.word}})}};
  d.candidates_raw = model.complete(messages, params);
  d.candidates = split_list(d.candidates_raw);
  d.candidates_empty = d.candidates.empty();
  messages.push_back({ChatRole::kAssistant, d.candidates_raw});
  messages.push_back({ChatRole::kUser,
                      catalog.render("deep.conservative.describe", {{"word", d.word}})});
  d.text = ask_nonempty(model, messages, params, catalog);
  finish(d);
  return d;
}

std::optional<int> parse_judgement(std::string_view reply) {
  static const std::regex number(R"((^|[^0-9A-Za-z])([0-9]+))");
  const std::string s(reply);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), number);
       it != std::sregex_iterator(); ++it) {
    const std::string digits = (*it)[2].str();
    if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '5') {
      return digits[0] - '0';
    }
  }
  return std::nullopt;
}

int judge_match(ChatModel& judge, std::string_view description, std::string_view word,
                int max_reprompts, const CompletionParams& params,
                const PromptCatalog& catalog) {
  Messages messages{{ChatRole::kUser,
                     catalog.render("deep.judge", {{"description", std::string(description)},
                                                   {"word", std::string(word)}})}};
  std::string last;
  for (int attempt = 0; attempt <= max_reprompts; ++attempt) {
    last = judge.complete(messages, params);
    if (auto score = parse_judgement(last)) return *score;
    messages.push_back({ChatRole::kAssistant, last});
    messages.push_back({ChatRole::kUser, catalog.render("feedback.judge", {})});
  }
  throw Error(ErrorCode::kUnparseableJudgement,
              "no score in 1..5 after " + std::to_string(max_reprompts + 1) +
                  " replies; last: '" + last + "'");
}

DeepReport aggregate(std::string model, std::vector<Judgement> judgements) {
  DeepReport report;
  report.model = std::move(model);
  double sums[2][2] = {{0, 0}, {0, 0}};
  int counts[2][2] = {{0, 0}, {0, 0}};
  for (const auto& j : judgements) {
    const int m = j.mode == DeepMode::kAggressive ? 0 : 1;
    const int t = j.is_target ? 0 : 1;
    sums[m][t] += j.score;
    ++counts[m][t];
  }
  auto fill = [&](DeepCell& cell, int m) {
    cell.target_count = counts[m][0];
    cell.distractor_count = counts[m][1];
    cell.target_mean = counts[m][0] ? sums[m][0] / counts[m][0] : 0;
    cell.distractor_mean = counts[m][1] ? sums[m][1] / counts[m][1] : 0;
  };
  fill(report.aggressive, 0);
  fill(report.conservative, 1);
  report.judgements = std::move(judgements);
  return report;
}

DeepReport score_model(ChatModel& model, ChatModel& judge,
                       const std::vector<DeepItem>& items, const DeepOptions& options,
                       const PromptCatalog& catalog) {
  if (items.empty()) throw Error(ErrorCode::kInvalidConfig, "no DEEP items");
  for (const auto& item : items) item.validate();

  struct ItemResult {
    std::vector<Description> descriptions;
    std::vector<Judgement> judgements;
  };
  std::vector<ItemResult> results(items.size());
  parallel_for(items.size(), options.parallelism, [&](std::size_t i) {
    const DeepItem& item = items[i];
    ItemResult& out = results[i];
    out.descriptions.push_back(
        describe_aggressive(model, item.target, options.describe_params, catalog));
    out.descriptions.push_back(
        describe_conservative(model, item.target, options.describe_params, catalog));
    for (const auto& d : out.descriptions) {
      auto judge_one = [&](const std::string& word, bool is_target) {
        int score = judge_match(judge, d.text, word, options.max_reprompts,
                                options.judge_params, catalog);
        out.judgements.push_back({i, d.mode, is_target, word, score});
      };
      judge_one(item.target, true);
      for (const auto& distractor : item.distractors) judge_one(distractor, false);
    }
  });

  std::vector<Judgement> all;
  std::vector<Description> descriptions;
  for (auto& r : results) {
    for (auto& d : r.descriptions) descriptions.push_back(std::move(d));
    for (auto& j : r.judgements) all.push_back(std::move(j));
  }
  DeepReport report = aggregate(model.label(), std::move(all));
  for (const auto& d : descriptions) report.over_limit += d.over_limit ? 1 : 0;
  report.descriptions = std::move(descriptions);
  report.judge = judge.label();
  report.describe_params = options.describe_params;
  report.judge_params = options.judge_params;
  return report;
}

std::string format_deep_table(const std::vector<DeepReport>& reports) {
  std::string out =
      "| Model | Aggressive Target | Aggressive Distractor | Conservative Target | "
      "Conservative Distractor |\n|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    out += "| " + r.model + " | " + fixed2(r.aggressive.target_mean) + " | " +
           fixed2(r.aggressive.distractor_mean) + " | " +
           fixed2(r.conservative.target_mean) + " | " +
           fixed2(r.conservative.distractor_mean) + " |\n";
  }
  return out;
}

nlohmann::json to_json(const DeepReport& report) {
  using nlohmann::json;
  auto cell = [](const DeepCell& c) {
    return json{{"target_mean", c.target_mean},
                {"distractor_mean", c.distractor_mean},
                {"target_count", c.target_count},
                {"distractor_count", c.distractor_count}};
  };
  json descriptions = json::array();
  for (const auto& d : report.descriptions) {
    json jd{{"word", d.word},          {"mode", to_string(d.mode)},
            {"text", d.text},          {"word_count", d.word_count},
            {"word_limit", d.word_limit}, {"over_limit", d.over_limit},
            {"empty", d.empty}};
    if (d.mode == DeepMode::kConservative) {
      jd["candidates"] = d.candidates;
      jd["candidates_empty"] = d.candidates_empty;
    }
    descriptions.push_back(std::move(jd));
  }
  json judgements = json::array();
  for (const auto& j : report.judgements) {
    judgements.push_back({{"item", j.item},
                          {"mode", to_string(j.mode)},
                          {"is_target", j.is_target},
                          {"word", j.word},
                          {"score", j.score}});
  }
  auto params = [](const CompletionParams& p) {
    json j{{"temperature", p.temperature}, {"max_tokens", p.max_tokens}};
    if (p.seed) j["seed"] = *p.seed;
    return j;
  };
  return json{{"model", report.model},
              {"judge", report.judge},
              {"params", {{"describe", params(report.describe_params)},
                          {"judge", params(report.judge_params)}}},
              {"aggressive", cell(report.aggressive)},
              {"conservative", cell(report.conservative)},
              {"over_limit", report.over_limit},
              {"descriptions", std::move(descriptions)},
              {"judgements", std::move(judgements)}};
}

}  // namespace spygame
