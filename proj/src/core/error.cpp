// Copyright 2026 The psfilter Authors
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

#include "psfilter/error.hpp"

namespace psfilter {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidFilter: return "invalid-filter";
    case ErrorCode::DegeneratePostselection: return "degenerate-postselection";
    case ErrorCode::SingularFisher: return "singular-fisher";
    case ErrorCode::NonUniformAmplification: return "non-uniform-amplification";
    case ErrorCode::UnboundedAmplification: return "unbounded-amplification";
    case ErrorCode::NonFinite: return "non-finite";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace psfilter
