// Copyright 2026 The QForge Authors.
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

#ifndef QFORGE_SRC_ERROR_H_
#define QFORGE_SRC_ERROR_H_

#include <stdexcept>
#include <string>

namespace qforge {

// Mirrors qf_status in the public C header; values must stay in sync.
enum class ErrorCode {
  kOk = 0,
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kBackendUnavailable = 4,
  kProtocol = 5,
  kInvalidArticle = 6,
  kInsufficientRaters = 7,
  kEmpty = 8,
  kPartial = 9,
  kInternal = 10,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qforge

#endif  // QFORGE_SRC_ERROR_H_
