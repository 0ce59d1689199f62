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

#ifndef SPYGAME_REMOTE_AGENT_H_
#define SPYGAME_REMOTE_AGENT_H_

#include <memory>
#include <string>

#include "spygame/agent.h"
#include "spygame/llm.h"
#include "spygame/prompts.h"

namespace spygame {

// Builds the chat transcript for one request from the prompt catalog.
// A re-prompt appends the rejected reply and the feedback message, then the
// instruction again.
Messages build_messages(const PromptCatalog& catalog, const AgentContext& ctx,
                        const AgentRequest& request);

// A seat played by a chat model.
class RemoteAgentBackend : public AgentBackend {
 public:
  RemoteAgentBackend(std::shared_ptr<ChatModel> model, CompletionParams params = {},
                     const PromptCatalog& catalog = PromptCatalog::builtin());

  std::string label() const override { return model_->label(); }
  std::optional<std::string> respond(const AgentContext& ctx,
                                     const AgentRequest& request) override;

 private:
  std::shared_ptr<ChatModel> model_;
  CompletionParams params_;
  const PromptCatalog& catalog_;
};

}  // namespace spygame

#endif  // SPYGAME_REMOTE_AGENT_H_
