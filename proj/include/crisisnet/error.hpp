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

#ifndef CRISISNET_ERROR_HPP_
#define CRISISNET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace crisisnet {

enum class ErrorCode {
  kInvalidArgument,
  kOrdering,          // stream not sorted by timestamp
  kWindow,            // edge outside the observation window
  kIngest,            // too many malformed rows
  kInsufficientData,  // not enough samples / support points / days
  kEmptyHistogram,
  kUnknownNode,
  kConfig,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library is an Error carrying a category code.
// The C API maps the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crisisnet

#endif  // CRISISNET_ERROR_HPP_
