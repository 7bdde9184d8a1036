// Copyright 2026 The dpmst Authors
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

#ifndef DPMST_ERROR_H_
#define DPMST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpmst {

enum class ErrorCode {
  kInvalidParam,
  kDisconnectedGraph,
  kUnknownEdge,
  kEmptyCandidates,
  kAlreadyActive,
  kNotActive,
  kRankOutOfRange,
  kUnknownGroup,
  kIo,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; callers
// switch on code() when they need to distinguish causes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpmst

#endif  // DPMST_ERROR_H_
