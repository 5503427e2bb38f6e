// Copyright 2026 The loadcluster Authors.
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

#ifndef LOADCLUSTER_ERROR_H_
#define LOADCLUSTER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace loadcluster {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kDegenerateInput,
  kNotConverged,
  kTooLarge,
  kBudgetExhausted,
  kParse,
  kIo,
  kMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; the code lets callers
// (and the CLI's exit-code mapping) distinguish parameter errors from
// numerical ones.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace loadcluster

#endif  // LOADCLUSTER_ERROR_H_
