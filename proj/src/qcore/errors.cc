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

#include "measrepro/errors.h"

namespace measrepro {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kDimensionTooLarge:
            return "DimensionTooLarge";
        case ErrorCode::kShapeMismatch:
            return "ShapeMismatch";
        case ErrorCode::kNotHermitian:
            return "NotHermitian";
        case ErrorCode::kZeroProbabilityOutcome:
            return "ZeroProbabilityOutcome";
        case ErrorCode::kInvalidBounds:
            return "InvalidBounds";
        case ErrorCode::kInfeasible:
            return "Infeasible";
        case ErrorCode::kUnachievable:
            return "Unachievable";
        case ErrorCode::kSearchSpaceTooLarge:
            return "SearchSpaceTooLarge";
        case ErrorCode::kTooFewSamples:
            return "TooFewSamples";
        case ErrorCode::kNotNormalized:
            return "NotNormalized";
        case ErrorCode::kTrivialMeasurement:
            return "TrivialMeasurement";
        case ErrorCode::kNotConverged:
            return "NotConverged";
        case ErrorCode::kTooLarge:
            return "TooLarge";
        case ErrorCode::kMalformedFile:
            return "MalformedFile";
        case ErrorCode::kInvalidMeasurement:
            return "InvalidMeasurement";
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace measrepro
