// Copyright 2026 The HetNet Utility Authors
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

#ifndef HETNET_ERROR_HPP_
#define HETNET_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetnet {

enum class ErrorCode {
  kConfig,
  kParse,
  kIo,
  kNonPositiveRate,
  kNoCandidate,
  kNonConvergence,
  kTooLarge,
  kBracketFailure,
  kDomain,
  kNoRoot,
  kEmptyActiveSet,
  kUnknownAlgorithm,
  kEmptySamples,
  kDegenerateQuantile,
  kInvariant,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; the C API maps the code to a
// status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hetnet

#endif  // HETNET_ERROR_HPP_
