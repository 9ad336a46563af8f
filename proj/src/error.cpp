// Copyright 2026 The gojun Authors.
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

#include "gojun/error.hpp"

namespace gojun {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kInvariant: return "INVARIANT_VIOLATION";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kIo: return "IO_ERROR";
    case ErrorCode::kNoScrambleSite: return "NO_SCRAMBLE_SITE";
    case ErrorCode::kTooManyOrders: return "TOO_MANY_ORDERS";
    case ErrorCode::kRoleNotUnique: return "ROLE_NOT_UNIQUE";
    case ErrorCode::kUnsupportedParticle: return "UNSUPPORTED_PARTICLE";
    case ErrorCode::kConjunctionInitial: return "CONJUNCTION_INITIAL";
    case ErrorCode::kNotMovable: return "NOT_MOVABLE";
    case ErrorCode::kExternalScorerDown: return "EXTERNAL_SCORER_DOWN";
    case ErrorCode::kProtocol: return "PROTOCOL_ERROR";
    case ErrorCode::kDegenerateVariance: return "DEGENERATE_VARIANCE";
    case ErrorCode::kZeroJoint: return "ZERO_JOINT";
    case ErrorCode::kEmptyEval: return "EMPTY_EVAL";
    case ErrorCode::kEmptyGroup: return "EMPTY_GROUP";
  }
  return "UNKNOWN";
}

}  // namespace gojun
