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

#include "spygame/agent.h"

#include <cctype>
#include <map>
#include <regex>
#include <sstream>

#include "spygame/error.h"
#include "spygame/text.h"

namespace spygame {
namespace {

std::string strip_decorations(std::string s) {
  s = text::trim(s);
  auto strip_chars = [](std::string& v, std::string_view chars) {
    while (!v.empty() && chars.find(v.front()) != std::string_view::npos) {
      v.erase(v.begin());
    }
    while (!v.empty() && chars.find(v.back()) != std::string_view::npos) {
      v.pop_back();
    }
  };
  strip_chars(s, " \t\"'`*_.,!?;:");
  return text::trim(s);
}

std::vector<std::string> lines_of(std::string_view s) {
  std::vector<std::string> out;
  for (auto& line : text::split(s, '\n')) {
    std::string t = text::trim(line);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

// Drops list markers such as "-", "*", "1." or "2)".
std::string strip_list_marker(std::string line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == '-' || line[i] == '*' || line[i] == ' ')) {
    ++i;
  }
  std::size_t j = i;
  while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
  if (j > i && j < line.size() && (line[j] == '.' || line[j] == ')')) i = j + 1;
  return text::trim(std::string_view(line).substr(i));
}

const std::regex& keyword_re() {
  static const std::regex re(R"(keyword\s*[:=]\s*([^;,\n]+))", std::regex::icase);
  return re;
}

const std::regex& identity_re() {
  static const std::regex re(R"(identity\s*[:=]\s*\W*(spy|villager))",
                             std::regex::icase);
  return re;
}

struct KeywordIdentity {
  std::string keyword;
  Role identity;
};

std::optional<KeywordIdentity> parse_keyword_identity(const std::string& s) {
  std::smatch km;
  std::smatch im;
  if (!std::regex_search(s, km, keyword_re())) return std::nullopt;
  if (!std::regex_search(s, im, identity_re())) return std::nullopt;
  std::string kw = strip_decorations(km[1].str());
  auto role = parse_role(im[1].str());
  if (kw.empty() || !role) return std::nullopt;
  return KeywordIdentity{kw, *role};
}

}  // namespace

const std::string& AgentContext::name_of(PlayerId p) const {
  return roster.at(static_cast<std::size_t>(index_of(p) - 1));
}

std::vector<std::string> AgentContext::survivor_names() const {
  std::vector<std::string> out;
  for (PlayerId p : survivors) out.push_back(name_of(p));
  return out;
}

std::string render_history(const AgentContext& ctx) {
  std::ostringstream out;
  for (const auto& e : ctx.history) {
    out << "Round " << e.round << ": ";
    switch (e.kind) {
      case HistoryEntry::Kind::kSpeech:
        out << ctx.name_of(e.actor) << " said: \"" << e.text << "\"";
        break;
      case HistoryEntry::Kind::kVote:
        out << ctx.name_of(e.actor) << " voted for "
            << ctx.name_of(e.target.value_or(e.actor));
        break;
      case HistoryEntry::Kind::kElimination:
        out << ctx.name_of(e.actor) << " was voted out";
        break;
    }
    out << "\n";
  }
  std::string s = out.str();
  if (s.empty()) return "(nothing yet)";
  s.pop_back();
  return s;
}

std::string_view to_string(Action action) {
  switch (action) {
    case Action::kSpeak: return "speak";
    case Action::kGuessWord: return "guess_word";
    case Action::kReason: return "reason";
    case Action::kVote: return "vote";
    case Action::kProbeFirst: return "probe_first";
    case Action::kProbeSecond: return "probe_second";
  }
  return "";
}

std::string_view to_string(Phase phase) {
  return phase == Phase::kSpeaking ? "speaking" : "voting";
}

std::optional<std::string> parse_guess(std::string_view reply) {
  auto lines = lines_of(reply);
  if (lines.empty()) return std::nullopt;
  std::string line = lines.front();
  // "Keyword: GPT" / "The other keyword is: GPT"
  if (auto colon = line.find(':'); colon != std::string::npos &&
                                   text::word_count(line.substr(0, colon)) <= 5) {
    line = line.substr(colon + 1);
  }
  std::string guess = strip_decorations(line);
  if (guess.empty()) return std::nullopt;
  return guess;
}

std::optional<std::size_t> parse_vote(std::string_view reply,
                                      const std::vector<std::string>& option_names) {
  const std::string norm = text::normalize(reply);
  if (norm.empty()) return std::nullopt;
  for (std::size_t i = 0; i < option_names.size(); ++i) {
    if (text::normalize(option_names[i]) == norm) return i;
  }
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < option_names.size(); ++i) {
    if (text::find_bounded(reply, option_names[i]) != std::string_view::npos) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

std::optional<FirstOrderInference> parse_first_order(
    std::string_view reply, const std::vector<PlayerId>& players,
    const std::vector<std::string>& roster) {
  std::map<PlayerId, KeywordIdentity> seen;
  for (auto& raw_line : lines_of(reply)) {
    std::string line = strip_list_marker(raw_line);
    // Longest roster name at the start of the line.
    std::optional<PlayerId> who;
    std::size_t best_len = 0;
    for (PlayerId p : players) {
      const std::string& name = roster.at(static_cast<std::size_t>(index_of(p) - 1));
      if (name.size() > best_len && text::find_bounded(line, name) == 0) {
        who = p;
        best_len = name.size();
      }
    }
    if (!who || seen.count(*who)) continue;
    if (auto ki = parse_keyword_identity(line.substr(best_len))) {
      seen.emplace(*who, *ki);
    }
  }
  FirstOrderInference out;
  for (PlayerId p : players) {
    auto it = seen.find(p);
    if (it == seen.end()) return std::nullopt;
    out.entries.push_back({p, it->second.keyword, it->second.identity});
  }
  if (out.spy_count() != 1) return std::nullopt;
  return out;
}

std::optional<SecondOrderInference> parse_second_order(std::string_view reply) {
  auto ki = parse_keyword_identity(std::string(reply));
  if (!ki) return std::nullopt;
  return SecondOrderInference{ki->keyword, ki->identity};
}

SpeakResult act_speak(AgentBackend& backend, const AgentContext& ctx,
                      const DescriptionCheck& check, int max_reprompts) {
  SpeakResult result;
  AgentRequest req;
  req.action = Action::kSpeak;
  for (int attempt = 0; attempt <= max_reprompts; ++attempt) {
    req.attempt = attempt;
    auto reply = backend.respond(ctx, req);
    ++result.attempts;
    if (!reply) break;
    std::string candidate = text::trim(*reply);
    req.previous_reply = candidate;
    if (candidate.empty()) {
      req.feedback_id = "feedback.empty";
      continue;
    }
    if (auto violation = check(candidate)) {
      result.violations.push_back(*violation);
      req.feedback_id = *violation == Violation::kKeywordLeak
                            ? "feedback.keyword_leak"
                            : "feedback.duplicate";
      continue;
    }
    result.text = std::move(candidate);
    return result;
  }
  result.violations.push_back(Violation::kFallback);
  result.text = std::string(kFallbackSpeech);
  return result;
}

GuessRecord act_guess_word(AgentBackend& backend, const AgentContext& ctx) {
  GuessRecord record;
  AgentRequest req;
  req.action = Action::kGuessWord;
  record.attempts = 0;
  for (int attempt = 0; attempt <= 1; ++attempt) {
    req.attempt = attempt;
    auto reply = backend.respond(ctx, req);
    ++record.attempts;
    if (!reply) break;
    if (auto guess = parse_guess(*reply)) {
      record.guess = *guess;
      return record;
    }
    req.previous_reply = *reply;
    req.feedback_id = "feedback.empty";
  }
  record.flagged = true;
  return record;
}

InferenceResult act_reason(AgentBackend& backend, const AgentContext& ctx,
                           int max_reprompts, Action action) {
  InferenceResult result;
  AgentRequest req;
  req.action = action;
  for (int attempt = 0; attempt <= max_reprompts; ++attempt) {
    req.attempt = attempt;
    auto reply = backend.respond(ctx, req);
    ++result.attempts;
    if (!reply) break;
    result.raw = *reply;
    result.inference = parse_first_order(*reply, ctx.survivors, ctx.roster);
    if (result.inference) return result;
    req.previous_reply = *reply;
    req.feedback_id = "feedback.first_order";
  }
  return result;
}

SecondOrderResult act_probe_second(AgentBackend& backend, const AgentContext& ctx,
                                   int max_reprompts) {
  SecondOrderResult result;
  AgentRequest req;
  req.action = Action::kProbeSecond;
  for (int attempt = 0; attempt <= max_reprompts; ++attempt) {
    req.attempt = attempt;
    auto reply = backend.respond(ctx, req);
    ++result.attempts;
    if (!reply) break;
    result.raw = *reply;
    result.inference = parse_second_order(*reply);
    if (result.inference) return result;
    req.previous_reply = *reply;
    req.feedback_id = "feedback.second_order";
  }
  return result;
}

VoteResult act_vote(AgentBackend& backend, const AgentContext& ctx,
                    const std::vector<PlayerId>& options, int max_reprompts,
                    Rng& rng) {
  if (options.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "vote requires at least one option");
  }
  std::vector<std::string> names;
  for (PlayerId p : options) names.push_back(ctx.name_of(p));

  VoteResult result;
  AgentRequest req;
  req.action = Action::kVote;
  req.options = options;
  for (int attempt = 0; attempt <= max_reprompts; ++attempt) {
    req.attempt = attempt;
    auto reply = backend.respond(ctx, req);
    ++result.attempts;
    if (!reply) break;
    if (auto idx = parse_vote(*reply, names)) {
      result.choice = options[*idx];
      return result;
    }
    req.previous_reply = *reply;
    req.feedback_id = "feedback.vote";
  }
  result.fallback = true;
  result.choice = rng.pick(std::span<const PlayerId>(options));
  return result;
}

}  // namespace spygame
