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

#ifndef SPYGAME_PROMPTS_H_
#define SPYGAME_PROMPTS_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace spygame {

using Slots = std::map<std::string, std::string, std::less<>>;

// A template with `{slot}` placeholders. `{{` and `}}` are literal braces.
// Slot values are inserted as-is and never re-scanned.
struct PromptTemplate {
  std::string id;
  std::string text;
  std::string reply;   // expected reply shape, e.g. "option", "score"
  std::string source;  // "verbatim" or "reconstruction"

  std::vector<std::string> slots() const;
};

// Throws Error(kUnboundSlot) if any slot has no value.
std::string render_prompt(const PromptTemplate& tmpl, const Slots& slots);

class PromptCatalog {
 public:
  // The catalog compiled from core/data/prompts.json.
  static const PromptCatalog& builtin();

  // Throws Error(kParseError) on malformed JSON or template syntax.
  static PromptCatalog parse(std::string_view json_text);
  static PromptCatalog load(const std::filesystem::path& path);

  // Throws Error(kUnknownTemplate).
  const PromptTemplate& get(std::string_view id) const;
  bool contains(std::string_view id) const;
  std::string render(std::string_view id, const Slots& slots) const;

  std::vector<std::string> ids() const;

 private:
  std::map<std::string, PromptTemplate, std::less<>> templates_;
};

// ['Player 2', 'Player 3'] -- the list notation used in the vote prompt.
std::string format_option_list(const std::vector<std::string>& names);

}  // namespace spygame

#endif  // SPYGAME_PROMPTS_H_
