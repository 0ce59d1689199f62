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

#include "spygame/log_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spygame/error.h"

namespace spygame {
namespace {

using nlohmann::json;

json event_to_json(const std::string& game_id, const Event& e) {
  json j;
  j["game_id"] = game_id;
  j["seq"] = e.seq;
  j["round"] = e.round;
  j["type"] = to_string(e.type());
  j["actor"] = e.actor ? json(index_of(*e.actor)) : json(nullptr);
  j["payload"] = payload_to_json(e.payload);
  return j;
}

}  // namespace

std::string serialize_log(const GameLog& log) {
  std::string out = json{{"format", kLogFormat}, {"version", kLogVersion}}.dump();
  out += '\n';
  for (const auto& e : log.events) {
    out += event_to_json(log.game_id, e).dump();
    out += '\n';
  }
  return out;
}

GameLog parse_log(std::string_view text) {
  GameLog log;
  std::size_t pos = 0;
  int line_no = 0;
  bool have_id = false;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw Error(ErrorCode::kCorruptRecord, "truncated record", line_no);
    }
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      if (line_no == 1) throw Error(ErrorCode::kSchemaMismatch, "missing log header");
      throw Error(ErrorCode::kCorruptRecord, e.what(), line_no);
    }
    if (line_no == 1) {
      if (!j.is_object() || j.value("format", "") != kLogFormat) {
        throw Error(ErrorCode::kSchemaMismatch, "not a spygame log");
      }
      if (j.value("version", -1) != kLogVersion) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "log version " + j.value("version", json()).dump() +
                        ", expected " + std::to_string(kLogVersion));
      }
      continue;
    }
    try {
      Event e;
      const std::string id = j.at("game_id").get<std::string>();
      if (!have_id) {
        log.game_id = id;
        have_id = true;
      } else if (id != log.game_id) {
        throw Error(ErrorCode::kCorruptRecord, "game_id changes mid-log", line_no);
      }
      e.seq = j.at("seq").get<int>();
      e.round = j.at("round").get<int>();
      if (!j.at("actor").is_null()) e.actor = player(j.at("actor").get<int>());
      auto type = parse_event_type(j.at("type").get<std::string>());
      if (!type) throw Error(ErrorCode::kCorruptRecord, "unknown event type", line_no);
      e.payload = payload_from_json(*type, j.at("payload"));
      if (e.seq != static_cast<int>(log.events.size())) {
        throw Error(ErrorCode::kCorruptRecord, "sequence gap", line_no);
      }
      if (log.events.empty() && *type != EventType::kConfig) {
        throw Error(ErrorCode::kCorruptRecord, "first event must be config", line_no);
      }
      if (!log.events.empty() && e.round < log.events.back().round) {
        throw Error(ErrorCode::kCorruptRecord, "round goes backwards", line_no);
      }
      if (!log.events.empty()) {
        auto last = log.events.back().type();
        if (last == EventType::kOutcome || last == EventType::kAborted) {
          throw Error(ErrorCode::kCorruptRecord, "event after game end", line_no);
        }
      }
      log.events.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::kCorruptRecord, ex.what(), line_no);
    } catch (const Error& ex) {
      if (ex.line()) throw;
      throw Error(ErrorCode::kCorruptRecord, ex.detail(), line_no);
    }
  }
  if (line_no == 0) throw Error(ErrorCode::kSchemaMismatch, "empty log");
  return log;
}

void write_log(const GameLog& log, const std::filesystem::path& file) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + file.string());
  out << serialize_log(log);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + file.string());
}

GameLog read_log(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_log(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.detail(), e.line());
  }
}

std::vector<std::filesystem::path> find_logs(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoError, "not a directory: " + dir.string());
  }
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".log") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GameLog> read_logs(const std::filesystem::path& dir) {
  std::vector<GameLog> out;
  for (const auto& p : find_logs(dir)) out.push_back(read_log(p));
  return out;
}

}  // namespace spygame
