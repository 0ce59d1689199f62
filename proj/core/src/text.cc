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

#include "spygame/text.h"

#include <cctype>

namespace spygame::text {
namespace {

bool is_ascii(unsigned char c) { return c < 0x80; }

bool is_word_byte(unsigned char c) {
  return !is_ascii(c) || std::isalnum(c) != 0;
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (is_ascii(u)) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (is_ascii(u) && (std::isspace(u) || std::ispunct(u))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(is_ascii(u) ? static_cast<char>(std::tolower(u)) : c);
  }
  return out;
}

std::vector<std::string> code_points(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto lead = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((lead & 0xE0) == 0xC0) {
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
    }
    if (i + len > s.size()) len = 1;
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (is_word_byte(u)) {
      cur.push_back(is_ascii(u) ? static_cast<char>(std::tolower(u)) : c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_cjk_language(std::string_view language) {
  std::string lang = to_lower_ascii(language);
  auto primary = lang.substr(0, lang.find_first_of("-_"));
  return primary == "zh" || primary == "ja" || primary == "ko" ||
         primary == "cn";
}

int word_count(std::string_view s) {
  int n = 0;
  bool in_word = false;
  for (char c : s) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

std::size_t find_bounded(std::string_view haystack, std::string_view needle,
                         std::size_t from) {
  if (needle.empty()) return std::string_view::npos;
  const std::string hay = to_lower_ascii(haystack);
  const std::string ndl = to_lower_ascii(needle);
  auto alnum_at = [&](std::size_t i) {
    return std::isalnum(static_cast<unsigned char>(hay[i])) != 0;
  };
  std::size_t pos = hay.find(ndl, from);
  while (pos != std::string::npos) {
    std::size_t end = pos + ndl.size();
    bool left_ok = pos == 0 || !alnum_at(pos - 1) || !std::isalnum(
        static_cast<unsigned char>(ndl.front()));
    bool right_ok = end >= hay.size() || !alnum_at(end) ||
                    !std::isalnum(static_cast<unsigned char>(ndl.back()));
    if (left_ok && right_ok) return pos;
    pos = hay.find(ndl, pos + 1);
  }
  return std::string_view::npos;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace spygame::text
