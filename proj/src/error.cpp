// Copyright 2026 The crisisnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crisisnet/error.hpp"

namespace crisisnet {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kOrdering:
      return "ordering error";
    case ErrorCode::kWindow:
      return "window error";
    case ErrorCode::kIngest:
      return "ingest error";
    case ErrorCode::kInsufficientData:
      return "insufficient data";
    case ErrorCode::kEmptyHistogram:
      return "empty histogram";
    case ErrorCode::kUnknownNode:
      return "unknown node";
    case ErrorCode::kConfig:
      return "config error";
    case ErrorCode::kIo:
      return "i/o error";
  }
  return "error";
}

}  // namespace crisisnet
