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

#include "spygame/error.h"

namespace spygame {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPair: return "InvalidPair";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kMissingVote: return "MissingVote";
    case ErrorCode::kUnboundSlot: return "UnboundSlot";
    case ErrorCode::kUnknownTemplate: return "UnknownTemplate";
    case ErrorCode::kScriptExhausted: return "ScriptExhausted";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kServerError: return "ServerError";
    case ErrorCode::kUnparseableJudgement: return "UnparseableJudgement";
    case ErrorCode::kUnsupportedN: return "UnsupportedN";
    case ErrorCode::kEmptyLogs: return "EmptyLogs";
    case ErrorCode::kMissingProbes: return "MissingProbes";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicatePair: return "DuplicatePair";
    case ErrorCode::kIncompleteLog: return "IncompleteLog";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kCorruptRecord: return "CorruptRecord";
    case ErrorCode::kClientDisconnected: return "ClientDisconnected";
    case ErrorCode::kBackendFault: return "BackendFault";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& what,
                           std::optional<int> line) {
  std::string out(to_string(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  if (!what.empty()) out += ": " + what;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<int> line)
    : std::runtime_error(format_message(code, what, line)),
      code_(code),
      line_(line),
      detail_(what) {}

}  // namespace spygame
