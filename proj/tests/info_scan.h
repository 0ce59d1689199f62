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

#ifndef SPYGAME_TESTS_INFO_SCAN_H_
#define SPYGAME_TESTS_INFO_SCAN_H_

// Scanner for leaks of hidden state: another player's keyword or any role.

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spygame/agent.h"
#include "spygame/text.h"

namespace spygame::testing {

// Whole-token, case-insensitive occurrence of `needle` in `haystack`.
inline bool mentions(const std::string& haystack, const std::string& needle) {
  const std::string h = " " + text::normalize(haystack) + " ";
  const std::string n = " " + text::normalize(needle) + " ";
  return h.find(n) != std::string::npos;
}

// What seat `self` must never see: keywords it does not hold, and role names.
inline std::vector<std::string> forbidden_for(const Assignments& truth, PlayerId self) {
  const std::string& own = truth.at(self).keyword;
  std::vector<std::string> out{"spy", "spies", "villager", "villagers"};
  for (const auto& [p, a] : truth) {
    if (text::normalize(a.keyword) != text::normalize(own)) out.push_back(a.keyword);
  }
  return out;
}

// All text the engine put into a context. own_notes is excluded: it holds
// the player's own earlier replies, not engine-supplied state.
inline std::vector<std::string> context_strings(const AgentContext& ctx) {
  std::vector<std::string> out{ctx.self_name, ctx.own_keyword, ctx.language};
  for (const auto& name : ctx.roster) out.push_back(name);
  for (const auto& e : ctx.history) out.push_back(e.text);
  return out;
}

inline void collect_strings(const nlohmann::json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      out.push_back(k);
      if (k != "rules_text" && k != "type" && k != "code") collect_strings(v, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_strings(v, out);
  }
}

struct LeakCounter {
  std::mutex mu;
  long scanned = 0;
  long leaks = 0;
  std::vector<std::string> examples;

  void check(const std::vector<std::string>& strings,
             const std::vector<std::string>& forbidden, const std::string& where) {
    std::lock_guard lock(mu);
    ++scanned;
    for (const auto& s : strings) {
      for (const auto& f : forbidden) {
        if (mentions(s, f)) {
          ++leaks;
          if (examples.size() < 5) examples.push_back(where + ": '" + f + "' in '" + s + "'");
        }
      }
    }
  }
};

// Passes every call through to `inner`, scanning each context on the way.
class ScanningBackend : public AgentBackend {
 public:
  ScanningBackend(std::unique_ptr<AgentBackend> inner, std::vector<std::string> forbidden,
                  std::shared_ptr<LeakCounter> counter)
      : inner_(std::move(inner)), forbidden_(std::move(forbidden)),
        counter_(std::move(counter)) {}

  std::string label() const override { return inner_->label(); }
  bool handles(Action a) const override { return inner_->handles(a); }
  std::optional<std::string> respond(const AgentContext& ctx,
                                     const AgentRequest& request) override {
    counter_->check(context_strings(ctx), forbidden_, ctx.self_name);
    return inner_->respond(ctx, request);
  }
  void on_game_start(const AgentContext& ctx) override {
    counter_->check(context_strings(ctx), forbidden_, ctx.self_name);
    inner_->on_game_start(ctx);
  }
  void on_phase(int round, Phase phase) override { inner_->on_phase(round, phase); }
  void on_public_event(const HistoryEntry& e) override {
    counter_->check({e.text}, forbidden_, "public event");
    inner_->on_public_event(e);
  }
  void on_game_over(const OutcomeRecord& o) override { inner_->on_game_over(o); }
  void on_game_aborted(const std::string& r) override { inner_->on_game_aborted(r); }

 private:
  std::unique_ptr<AgentBackend> inner_;
  std::vector<std::string> forbidden_;
  std::shared_ptr<LeakCounter> counter_;
};

}  // namespace spygame::testing

#endif  // SPYGAME_TESTS_INFO_SCAN_H_
