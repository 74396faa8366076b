// Copyright 2026 The vqlsgp Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqlsgp/error.hpp"

namespace vqlsgp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::QubitCountOutOfRange: return "QubitCountOutOfRange";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::ControlTargetOverlap: return "ControlTargetOverlap";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::NonRealInput: return "NonRealInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ParamCountMismatch: return "ParamCountMismatch";
    case ErrorCode::MissingReuploadVector: return "MissingReuploadVector";
    case ErrorCode::NonPositiveNorm: return "NonPositiveNorm";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NonFiniteGradient:
    case ErrorCode::NonFiniteObjective:
    case ErrorCode::NonPositiveNorm:
    case ErrorCode::SingularMatrix:
    case ErrorCode::NonRealInput:
        return true;
    default:
        return false;
    }
}

} // namespace vqlsgp
