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

#include "spygame/keywords.h"

#include <fstream>
#include <set>
#include <string>
#include <sstream>
#include <utility>

#include "spygame/error.h"
#include "spygame/text.h"

namespace spygame {

std::vector<KeywordPair> parse_keyword_pairs(std::string_view input) {
  std::vector<KeywordPair> pairs;
  std::set<std::pair<std::string, std::string>> seen;
  int line_no = 0;
  for (auto& line : text::split(input, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() < 2 || fields.size() > 4) {
      throw Error(ErrorCode::kParseError,
                  "expected word_a, word_b, language, domain separated by tabs",
                  line_no);
    }
    KeywordPair pair;
    pair.word_a = text::trim(fields[0]);
    pair.word_b = text::trim(fields[1]);
    if (fields.size() > 2 && !text::trim(fields[2]).empty()) {
      pair.language = text::trim(fields[2]);
    }
    if (fields.size() > 3) pair.domain = text::trim(fields[3]);
    try {
      pair.validate();
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), line_no);
    }
    std::string a = text::normalize(pair.word_a);
    std::string b = text::normalize(pair.word_b);
    if (b < a) std::swap(a, b);
    if (!seen.insert({a, b}).second) {
      throw Error(ErrorCode::kDuplicatePair,
                  pair.word_a + " / " + pair.word_b + " appears twice", line_no);
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<KeywordPair> load_keyword_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_keyword_pairs(buf.str());
}

}  // namespace spygame
