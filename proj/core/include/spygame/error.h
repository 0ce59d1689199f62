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

#ifndef SPYGAME_ERROR_H_
#define SPYGAME_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spygame {

enum class ErrorCode {
  kInvalidPair,
  kInvalidConfig,
  kMissingVote,
  kUnboundSlot,
  kUnknownTemplate,
  kScriptExhausted,
  kAuthError,
  kRateLimited,
  kTimeout,
  kMalformedResponse,
  kServerError,
  kUnparseableJudgement,
  kUnsupportedN,
  kEmptyLogs,
  kMissingProbes,
  kParseError,
  kDuplicatePair,
  kIncompleteLog,
  kSchemaMismatch,
  kCorruptRecord,
  kClientDisconnected,
  kBackendFault,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `line()` is set for errors that
// point into an input file (keyword/word files, logs).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<int> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> line() const noexcept { return line_; }
  // The message without the code and line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<int> line_;
  std::string detail_;
};

}  // namespace spygame

#endif  // SPYGAME_ERROR_H_
