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

#include "spygame/remote_agent.h"

#include "spygame/text.h"

namespace spygame {
namespace {

std::string first_order_format(const PromptCatalog& catalog, const AgentContext& ctx) {
  return catalog.render("format.first_order",
                        {{"players", text::join(ctx.survivor_names(), ", ")}});
}

std::vector<std::string> option_names(const AgentContext& ctx,
                                      const AgentRequest& request) {
  std::vector<std::string> names;
  for (PlayerId p : request.options) names.push_back(ctx.name_of(p));
  return names;
}

std::string instruction(const PromptCatalog& catalog, const AgentContext& ctx,
                        const AgentRequest& request) {
  switch (request.action) {
    case Action::kSpeak:
      return catalog.render("game.speak", {{"round", std::to_string(ctx.round)},
                                           {"name", ctx.self_name}});
    case Action::kGuessWord: return catalog.render("game.guess", {});
    case Action::kReason:
      return catalog.render("game.reason", {{"format", first_order_format(catalog, ctx)}});
    case Action::kProbeFirst:
      return catalog.render("tom.first_order",
                            {{"format", first_order_format(catalog, ctx)}});
    case Action::kProbeSecond:
      return catalog.render("tom.second_order",
                            {{"format", catalog.render("format.second_order", {})}});
    case Action::kVote:
      return catalog.render(
          "game.vote", {{"name", ctx.self_name},
                        {"options", format_option_list(option_names(ctx, request))}});
  }
  return "";
}

std::string feedback(const PromptCatalog& catalog, const AgentContext& ctx,
                     const AgentRequest& request) {
  const auto& tmpl = catalog.get(request.feedback_id);
  Slots slots;
  for (const auto& slot : tmpl.slots()) {
    if (slot == "options") {
      slots[slot] = format_option_list(option_names(ctx, request));
    } else if (slot == "format") {
      slots[slot] = request.action == Action::kProbeSecond
                        ? catalog.render("format.second_order", {})
                        : first_order_format(catalog, ctx);
    }
  }
  return render_prompt(tmpl, slots);
}

}  // namespace

Messages build_messages(const PromptCatalog& catalog, const AgentContext& ctx,
                        const AgentRequest& request) {
  Messages out;
  out.push_back({ChatRole::kSystem,
                 catalog.render("game.system",
                                {{"name", ctx.self_name},
                                 {"n_players", std::to_string(ctx.roster.size())},
                                 {"roster", text::join(ctx.roster, ", ")},
                                 {"keyword", ctx.own_keyword}})});
  std::string notes;
  if (!ctx.own_notes.empty()) {
    notes = "Your private notes:\n" + text::join(ctx.own_notes, "\n") + "\n";
  }
  const std::string ask = instruction(catalog, ctx, request);
  out.push_back({ChatRole::kUser, catalog.render("game.turn", {{"history", render_history(ctx)},
                                                               {"notes", notes},
                                                               {"instruction", ask}})});
  if (request.attempt > 0 && !request.feedback_id.empty()) {
    out.push_back({ChatRole::kAssistant, request.previous_reply});
    out.push_back({ChatRole::kUser, feedback(catalog, ctx, request) + "\n" + ask});
  }
  return out;
}

RemoteAgentBackend::RemoteAgentBackend(std::shared_ptr<ChatModel> model,
                                       CompletionParams params,
                                       const PromptCatalog& catalog)
    : model_(std::move(model)), params_(params), catalog_(catalog) {
  params_.validate();
}

std::optional<std::string> RemoteAgentBackend::respond(const AgentContext& ctx,
                                                       const AgentRequest& request) {
  return model_->complete(build_messages(catalog_, ctx, request), params_);
}

}  // namespace spygame
