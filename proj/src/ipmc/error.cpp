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

#include "ipmc/error.hpp"

namespace ipmc {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kDimension: return "dimension error";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kNumerical: return "numerical error";
    case ErrorCode::kArgument: return "argument error";
    case ErrorCode::kResource: return "resource error";
    case ErrorCode::kDegenerateState: return "degenerate state";
    case ErrorCode::kPrecondition: return "precondition error";
    case ErrorCode::kConditioning: return "conditioning error";
    case ErrorCode::kLayerValidation: return "layer validation error";
    case ErrorCode::kUnsupportedLayout: return "unsupported layout";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kDegenerateTruncation: return "degenerate truncation";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

}  // namespace ipmc
