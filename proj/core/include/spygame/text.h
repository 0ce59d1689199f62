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

#ifndef SPYGAME_TEXT_H_
#define SPYGAME_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace spygame::text {

// Lowercases ASCII letters, replaces ASCII punctuation with spaces, collapses
// whitespace runs and trims. Non-ASCII bytes pass through untouched.
std::string normalize(std::string_view s);

std::string trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

// Splits into UTF-8 code points (one string per code point). Invalid lead
// bytes are returned as single-byte units.
std::vector<std::string> code_points(std::string_view s);

// Word tokens: maximal runs of ASCII alphanumerics or non-ASCII bytes,
// lowercased.
std::vector<std::string> tokens(std::string_view s);

// True for language tags whose script has no word spacing (zh, ja, ko and
// their regional variants).
bool is_cjk_language(std::string_view language);

// Whitespace-delimited word count.
int word_count(std::string_view s);

// Case-insensitive search for `needle` in `haystack` where the match must not
// be flanked by ASCII alphanumerics. Returns npos when absent.
std::size_t find_bounded(std::string_view haystack, std::string_view needle,
                         std::size_t from = 0);

std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace spygame::text

#endif  // SPYGAME_TEXT_H_
