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

#ifndef SPYGAME_KEYWORDS_H_
#define SPYGAME_KEYWORDS_H_

#include <string>
#include <string_view>
#include <vector>

#include "spygame/types.h"

namespace spygame {

// "word_a<TAB>word_b<TAB>language<TAB>domain" per line; language and domain
// are optional (default "en", ""). Blank lines and '#' comments are skipped.
// Throws Error(kParseError), Error(kInvalidPair) or Error(kDuplicatePair),
// each carrying the 1-based line number. Pairs are unordered when checking
// for duplicates.
std::vector<KeywordPair> parse_keyword_pairs(std::string_view text);
std::vector<KeywordPair> load_keyword_pairs(const std::string& path);

}  // namespace spygame

#endif  // SPYGAME_KEYWORDS_H_
