// Copyright 2026 The occluded Authors
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

#ifndef OCCLUDED_ERROR_HPP_
#define OCCLUDED_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace occluded {

// Failure categories. The numeric values are mirrored by occ_status in the
// C API, so keep them in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kDegenerateScene = 3,
  kBalance = 4,
  kConvergence = 5,
  kOrientation = 6,
  kUnsupported = 7,
  kIo = 8,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base exception for every failure raised by the library. The message is
// prefixed with the reporting module, e.g. "spline: index out of range".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& message)
      : std::runtime_error(std::string(module) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace occluded

#endif  // OCCLUDED_ERROR_HPP_
