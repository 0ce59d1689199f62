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

#include "spygame/prompts.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spygame/error.h"

namespace spygame {
namespace internal {
extern const char kBuiltinPrompts[];
}  // namespace internal

namespace {

struct Piece {
  bool is_slot;
  std::string value;
};

bool is_slot_char(char c, bool first) {
  auto u = static_cast<unsigned char>(c);
  if (std::isalpha(u) || c == '_') return true;
  return !first && (std::isdigit(u) || c == '.');
}

// Splits template text into literal and slot pieces.
std::vector<Piece> tokenize(std::string_view text, std::string_view id) {
  std::vector<Piece> pieces;
  std::string literal;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParseError,
                "template '" + std::string(id) + "': " + why);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{') {
      if (i + 1 < text.size() && text[i + 1] == '{') {
        literal.push_back('{');
        ++i;
        continue;
      }
      std::size_t close = text.find('}', i + 1);
      if (close == std::string_view::npos) fail("unterminated slot");
      std::string_view name = text.substr(i + 1, close - i - 1);
      if (name.empty()) fail("empty slot name");
      for (std::size_t k = 0; k < name.size(); ++k) {
        if (!is_slot_char(name[k], k == 0)) {
          fail("bad slot name '" + std::string(name) + "'");
        }
      }
      if (!literal.empty()) pieces.push_back({false, std::move(literal)});
      literal.clear();
      pieces.push_back({true, std::string(name)});
      i = close;
    } else if (c == '}') {
      if (i + 1 < text.size() && text[i + 1] == '}') {
        literal.push_back('}');
        ++i;
        continue;
      }
      fail("stray '}'");
    } else {
      literal.push_back(c);
    }
  }
  if (!literal.empty()) pieces.push_back({false, std::move(literal)});
  return pieces;
}

}  // namespace

std::vector<std::string> PromptTemplate::slots() const {
  std::vector<std::string> out;
  for (auto& piece : tokenize(text, id)) {
    if (piece.is_slot &&
        std::find(out.begin(), out.end(), piece.value) == out.end()) {
      out.push_back(piece.value);
    }
  }
  return out;
}

std::string render_prompt(const PromptTemplate& tmpl, const Slots& slots) {
  std::string out;
  for (auto& piece : tokenize(tmpl.text, tmpl.id)) {
    if (!piece.is_slot) {
      out += piece.value;
      continue;
    }
    auto it = slots.find(piece.value);
    if (it == slots.end()) {
      throw Error(ErrorCode::kUnboundSlot,
                  "slot '" + piece.value + "' in template '" + tmpl.id + "'");
    }
    out += it->second;
  }
  return out;
}

const PromptCatalog& PromptCatalog::builtin() {
  static const PromptCatalog catalog = parse(internal::kBuiltinPrompts);
  return catalog;
}

PromptCatalog PromptCatalog::parse(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("prompt catalog: ") + e.what());
  }
  PromptCatalog catalog;
  try {
    if (j.at("format").get<std::string>() != "spygame-prompts") {
      throw Error(ErrorCode::kParseError, "not a prompt catalog");
    }
    for (const auto& [id, t] : j.at("templates").items()) {
      PromptTemplate tmpl{id, t.at("text").get<std::string>(),
                          t.value("reply", "free_text"),
                          t.value("source", "reconstruction")};
      tmpl.slots();  // validates syntax
      catalog.templates_.emplace(id, std::move(tmpl));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("prompt catalog: ") + e.what());
  }
  return catalog;
}

PromptCatalog PromptCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const PromptTemplate& PromptCatalog::get(std::string_view id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) {
    throw Error(ErrorCode::kUnknownTemplate, std::string(id));
  }
  return it->second;
}

bool PromptCatalog::contains(std::string_view id) const {
  return templates_.find(id) != templates_.end();
}

std::string PromptCatalog::render(std::string_view id, const Slots& slots) const {
  return render_prompt(get(id), slots);
}

std::vector<std::string> PromptCatalog::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : templates_) out.push_back(id);
  return out;
}

std::string format_option_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += "'" + names[i] + "'";
  }
  return out + "]";
}

}  // namespace spygame
