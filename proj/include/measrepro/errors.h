// Copyright 2026 The measrepro Authors
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

#ifndef MEASREPRO_ERRORS_H_
#define MEASREPRO_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace measrepro {

enum class ErrorCode {
    kDimensionTooLarge,
    kShapeMismatch,
    kNotHermitian,
    kZeroProbabilityOutcome,
    kInvalidBounds,
    kInfeasible,
    kUnachievable,
    kSearchSpaceTooLarge,
    kTooFewSamples,
    kNotNormalized,
    kTrivialMeasurement,
    kNotConverged,
    kTooLarge,
    kMalformedFile,
    kInvalidMeasurement,
    kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-status logic) can dispatch without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace measrepro

#endif  // MEASREPRO_ERRORS_H_
