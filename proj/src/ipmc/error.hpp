// Copyright 2026 The ipmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ipmc {

/// Failure categories shared by every module. The numeric values are part of
/// the C API (see ipmc.h) and must not be reordered.
enum class ErrorCode : int {
  kOk = 0,
  kDimension = 1,
  kShape = 2,
  kNumerical = 3,
  kArgument = 4,
  kResource = 5,
  kDegenerateState = 6,
  kPrecondition = 7,
  kConditioning = 8,
  kLayerValidation = 9,
  kUnsupportedLayout = 10,
  kParse = 11,
  kIo = 12,
  kDegenerateTruncation = 13,
  kInternal = 99,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace ipmc
