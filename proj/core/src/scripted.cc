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

#include "spygame/scripted.h"

#include <fstream>
#include <string>

#include "spygame/error.h"
#include "spygame/rng.h"
#include "spygame/text.h"

namespace spygame {
namespace {

[[noreturn]] void bad_spec(std::string_view spec, std::string_view why) {
  throw Error(ErrorCode::kInvalidConfig,
              "scripted policy '" + std::string(spec) + "': " + std::string(why));
}

int parse_int(std::string_view s, std::string_view spec) {
  try {
    std::size_t used = 0;
    int v = std::stoi(std::string(s), &used);
    if (used != s.size()) bad_spec(spec, "bad number");
    return v;
  } catch (const std::logic_error&) {
    bad_spec(spec, "bad number");
  }
}

}  // namespace

bool ScriptedPolicy::needs_truth() const {
  return reasoning == Reasoning::kTruth || vote == Vote::kLowestVillager ||
         vote == Vote::kSpy;
}

ScriptedPolicy parse_scripted_policy(std::string_view spec) {
  ScriptedPolicy policy;
  if (text::trim(spec).empty()) return policy;
  for (const auto& raw : text::split(spec, '+')) {
    const std::string token = text::trim(raw);
    const auto eq = token.find('=');
    const std::string key = token.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : token.substr(eq + 1);
    if (key == "generic") {
      policy.speech = ScriptedPolicy::Speech::kGeneric;
    } else if (key == "dots") {
      policy.speech = ScriptedPolicy::Speech::kDots;
    } else if (key == "echo") {
      policy.speech = ScriptedPolicy::Speech::kTable;
      policy.table = load_echo_table(value);
    } else if (key == "uniform") {
      policy.vote = ScriptedPolicy::Vote::kUniform;
    } else if (key == "first") {
      policy.vote = ScriptedPolicy::Vote::kFirst;
    } else if (key == "target") {
      policy.vote = ScriptedPolicy::Vote::kTarget;
      policy.target = parse_int(value, spec);
    } else if (key == "lowest-villager") {
      policy.vote = ScriptedPolicy::Vote::kLowestVillager;
    } else if (key == "spy") {
      policy.vote = ScriptedPolicy::Vote::kSpy;
    } else if (key == "naive") {
      policy.reasoning = ScriptedPolicy::Reasoning::kNaive;
    } else if (key == "truth") {
      policy.reasoning = ScriptedPolicy::Reasoning::kTruth;
    } else if (key == "guess") {
      if (value.empty()) bad_spec(spec, "guess needs a word");
      policy.guess = value;
    } else if (key == "second") {
      auto colon = value.rfind(':');
      if (colon == std::string::npos) bad_spec(spec, "second needs keyword:role");
      auto role = parse_role(value.substr(colon + 1));
      if (!role || colon == 0) bad_spec(spec, "second needs keyword:role");
      policy.second = SecondOrderInference{value.substr(0, colon), *role};
    } else {
      bad_spec(spec, "unknown token '" + token + "'");
    }
  }
  return policy;
}

std::map<std::pair<int, int>, std::string> load_echo_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read echo table " + path);
  std::map<std::pair<int, int>, std::string> table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty() || text::trim(line)[0] == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParseError, "expected seat, round and text", line_no);
    }
    try {
      table[{std::stoi(fields[0]), std::stoi(fields[1])}] = fields[2];
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError, "bad seat or round", line_no);
    }
  }
  return table;
}

ScriptedBackend::ScriptedBackend(ScriptedPolicy policy, std::uint64_t seed,
                                 std::optional<Assignments> truth, std::string label)
    : policy_(std::move(policy)),
      seed_(seed),
      truth_(std::move(truth)),
      label_(std::move(label)) {
  if (policy_.needs_truth() && !truth_) {
    throw Error(ErrorCode::kInvalidConfig,
                "scripted policy '" + label_ + "' needs the assignments");
  }
}

std::optional<std::string> ScriptedBackend::respond(const AgentContext& ctx,
                                                    const AgentRequest& request) {
  switch (request.action) {
    case Action::kSpeak: return speak(ctx, request);
    case Action::kGuessWord: return policy_.guess;
    case Action::kReason:
    case Action::kProbeFirst: return reason(ctx);
    case Action::kVote: return vote(ctx, request);
    case Action::kProbeSecond: return second_order(ctx);
  }
  return std::nullopt;
}

std::string ScriptedBackend::speak(const AgentContext& ctx,
                                   const AgentRequest& request) const {
  switch (policy_.speech) {
    case ScriptedPolicy::Speech::kDots: return std::string(kFallbackSpeech);
    case ScriptedPolicy::Speech::kTable: {
      auto it = policy_.table.find({index_of(ctx.self), ctx.round});
      return it == policy_.table.end() ? std::string(kFallbackSpeech) : it->second;
    }
    case ScriptedPolicy::Speech::kGeneric: break;
  }
  std::string out = "Clue " + std::to_string(ctx.round) + " from seat " +
                    std::to_string(index_of(ctx.self));
  if (request.attempt > 0) out += " take " + std::to_string(request.attempt + 1);
  return out;
}

std::string ScriptedBackend::vote(const AgentContext& ctx,
                                  const AgentRequest& request) const {
  const auto& options = request.options;
  if (options.empty()) return "";
  PlayerId choice = options.front();
  switch (policy_.vote) {
    case ScriptedPolicy::Vote::kFirst: break;
    case ScriptedPolicy::Vote::kUniform: {
      Rng rng(derive_seed({seed_, static_cast<std::uint64_t>(index_of(ctx.self)),
                           static_cast<std::uint64_t>(ctx.round),
                           static_cast<std::uint64_t>(ctx.history.size()),
                           static_cast<std::uint64_t>(request.attempt)}));
      choice = rng.pick(std::span<const PlayerId>(options));
      break;
    }
    case ScriptedPolicy::Vote::kTarget:
      for (PlayerId p : options) {
        if (index_of(p) == policy_.target) choice = p;
      }
      break;
    case ScriptedPolicy::Vote::kLowestVillager:
    case ScriptedPolicy::Vote::kSpy: {
      const Role want = policy_.vote == ScriptedPolicy::Vote::kSpy ? Role::kSpy
                                                                   : Role::kVillager;
      std::optional<PlayerId> best;
      for (PlayerId p : options) {
        if (truth_->at(p).role == want && (!best || p < *best)) best = p;
      }
      if (best) choice = *best;
      break;
    }
  }
  return ctx.name_of(choice);
}

std::string ScriptedBackend::reason(const AgentContext& ctx) const {
  FirstOrderInference inference;
  if (policy_.reasoning == ScriptedPolicy::Reasoning::kTruth) {
    for (PlayerId p : ctx.survivors) {
      const auto& a = truth_->at(p);
      inference.entries.push_back({p, a.keyword, a.role});
    }
  } else {
    // Everyone shares my keyword; the spy is a seeded pick among the others.
    std::vector<PlayerId> others;
    for (PlayerId p : ctx.survivors) {
      if (p != ctx.self) others.push_back(p);
    }
    PlayerId spy = ctx.self;
    if (!others.empty()) {
      Rng rng(derive_seed({seed_, 0x7265'6173'6f6eULL,
                           static_cast<std::uint64_t>(index_of(ctx.self)),
                           static_cast<std::uint64_t>(ctx.history.size())}));
      spy = rng.pick(std::span<const PlayerId>(others));
    }
    for (PlayerId p : ctx.survivors) {
      inference.entries.push_back(
          {p, ctx.own_keyword, p == spy ? Role::kSpy : Role::kVillager});
    }
  }
  return format_first_order(inference, ctx.roster);
}

std::string ScriptedBackend::second_order(const AgentContext& ctx) const {
  if (policy_.second) return format_second_order(*policy_.second);
  return format_second_order({ctx.own_keyword, Role::kVillager});
}

std::string format_first_order(const FirstOrderInference& inference,
                               const std::vector<std::string>& roster) {
  std::string out;
  for (const auto& e : inference.entries) {
    out += roster.at(static_cast<std::size_t>(index_of(e.player) - 1)) +
           ": keyword=" + e.keyword + "; identity=" + std::string(to_string(e.identity)) +
           "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string format_second_order(const SecondOrderInference& inference) {
  return "keyword=" + inference.keyword +
         "; identity=" + std::string(to_string(inference.identity));
}

}  // namespace spygame
