/*
 * Copyright 2026 The UDA Hardness Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uda {

// Two user-visible failure classes: bad inputs vs. computations that cannot
// proceed (zero evidence, guards). They map to process exit codes 1 and 2.
enum class ErrorKind { kValidation = 1, kNumeric = 2 };

enum class ErrorCode {
  kNonNormalized,
  kDanglingClassifierId,
  kEmptySupport,
  kShapeMismatch,
  kZeroEvidence,
  kUnknownPair,
  kTooLarge,
  kNoMetric,
  kWrongBase,
  kMissingEStar,
  kEmptyTargetSample,
  kInconsistentClassifier,
  kBadArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message),
        kind(kind),
        code(code),
        details(std::move(details)) {}

  ErrorKind kind;
  ErrorCode code;
  // For validation: one entry per violated invariant.
  std::vector<std::string> details;
};

[[noreturn]] inline void throw_validation(ErrorCode code, const std::string& message,
                                          std::vector<std::string> details = {}) {
  throw Error(ErrorKind::kValidation, code, message, std::move(details));
}

[[noreturn]] inline void throw_numeric(ErrorCode code, const std::string& message) {
  throw Error(ErrorKind::kNumeric, code, message);
}

}  // namespace uda
