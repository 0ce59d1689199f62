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

#ifndef SPYGAME_LOG_IO_H_
#define SPYGAME_LOG_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spygame/events.h"

namespace spygame {

inline constexpr std::string_view kLogFormat = "spygame-log";
inline constexpr int kLogVersion = 1;

// One header line, then one JSON object per event with sorted keys:
//   {"format":"spygame-log","version":1}
//   {"actor":null,"game_id":"...","payload":{...},"round":0,"seq":0,"type":"Config"}
// Every line ends in '\n'.
std::string serialize_log(const GameLog& log);

// Throws Error(kSchemaMismatch) for a foreign header or version and
// Error(kCorruptRecord) with the 1-based line number for anything else,
// including a final line without its newline.
GameLog parse_log(std::string_view text);

// Creates parent directories. Throws Error(kIoError).
void write_log(const GameLog& log, const std::filesystem::path& file);
GameLog read_log(const std::filesystem::path& file);

// Every *.log under `dir`, recursively, in path order.
std::vector<std::filesystem::path> find_logs(const std::filesystem::path& dir);
std::vector<GameLog> read_logs(const std::filesystem::path& dir);

}  // namespace spygame

#endif  // SPYGAME_LOG_IO_H_
