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

#include "dpmst/error.h"

namespace dpmst {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParam:
      return "InvalidParam";
    case ErrorCode::kDisconnectedGraph:
      return "DisconnectedGraph";
    case ErrorCode::kUnknownEdge:
      return "UnknownEdge";
    case ErrorCode::kEmptyCandidates:
      return "EmptyCandidates";
    case ErrorCode::kAlreadyActive:
      return "AlreadyActive";
    case ErrorCode::kNotActive:
      return "NotActive";
    case ErrorCode::kRankOutOfRange:
      return "RankOutOfRange";
    case ErrorCode::kUnknownGroup:
      return "UnknownGroup";
    case ErrorCode::kIo:
      return "IoError";
    case ErrorCode::kParse:
      return "ParseError";
  }
  return "Unknown";
}

}  // namespace dpmst
