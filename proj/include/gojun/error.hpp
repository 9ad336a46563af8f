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

#ifndef GOJUN_ERROR_HPP_
#define GOJUN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gojun {

enum class ErrorCode {
  kParse,
  kInvariant,
  kInvalidArgument,
  kIo,
  kNoScrambleSite,
  kTooManyOrders,
  kRoleNotUnique,
  kUnsupportedParticle,
  kConjunctionInitial,
  kNotMovable,
  kExternalScorerDown,
  kProtocol,
  kDegenerateVariance,
  kZeroJoint,
  kEmptyEval,
  kEmptyGroup,
};

// Stable upper-case name used in reports and messages, e.g. "TOO_MANY_ORDERS".
std::string_view error_code_name(ErrorCode code);

// All library failures are reported as gojun::Error. The code is what
// experiment runners tally when a per-sentence operation fails.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class TooManyOrders : public Error {
 public:
  TooManyOrders(int children, const std::string& message)
      : Error(ErrorCode::kTooManyOrders, message), children_(children) {}

  // Number of children at the rejected site.
  int children() const noexcept { return children_; }

 private:
  int children_;
};

}  // namespace gojun

#endif  // GOJUN_ERROR_HPP_
