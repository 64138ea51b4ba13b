// Copyright 2026 The ZaCQ Authors. All rights reserved.
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

#ifndef ZACQ_ERROR_HPP_
#define ZACQ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace zacq {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kNotFound,
  kState,
  kUnknownMethod,
  kPortInUse,
  kInternal,
};

// All recoverable failures in the core are reported with this exception; the
// C API translates the code into a zacq_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zacq

#endif  // ZACQ_ERROR_HPP_
