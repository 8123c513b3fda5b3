// Copyright 2026 The Authors.
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

#ifndef DNFBLOCK_ERROR_H_
#define DNFBLOCK_ERROR_H_

#include <stdexcept>
#include <string>

namespace dnfblock {

enum class ErrorCode {
  kInvalidArgument,  // bad configuration or precondition violation
  kParse,            // malformed input file or document
  kNotFound,         // unknown extractor, node, or predicate id
  kLimitExceeded,    // a configured size guard tripped
};

// All library failures are reported as this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dnfblock

#endif  // DNFBLOCK_ERROR_H_
