// Copyright 2026 The syndrome-lab Authors.
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

#include "synlab/error.hpp"

namespace synlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrimePower:
      return "NotPrimePower";
    case ErrorCode::kDivisionByZero:
      return "DivisionByZero";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kNotInRowSpace:
      return "NotInRowSpace";
    case ErrorCode::kNotExpressible:
      return "NotExpressible";
    case ErrorCode::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorCode::kTableTooLarge:
      return "TableTooLarge";
    case ErrorCode::kDegenerateDirection:
      return "DegenerateDirection";
    case ErrorCode::kRankTooLow:
      return "RankTooLow";
    case ErrorCode::kDesignDegenerate:
      return "DesignDegenerate";
    case ErrorCode::kNotAWitness:
      return "NotAWitness";
    case ErrorCode::kThresholdUnderflow:
      return "ThresholdUnderflow";
    case ErrorCode::kInfeasibleBudget:
      return "InfeasibleBudget";
    case ErrorCode::kMissingDistance:
      return "MissingDistance";
    case ErrorCode::kParameterViolation:
      return "ParameterViolation";
    case ErrorCode::kDistanceTooSmall:
      return "DistanceTooSmall";
    case ErrorCode::kNotFound:
      return "NotFound";
    case ErrorCode::kDomainError:
      return "DomainError";
    case ErrorCode::kAdmissibilityViolation:
      return "AdmissibilityViolation";
    case ErrorCode::kHypothesisViolation:
      return "HypothesisViolation";
    case ErrorCode::kHypothesisUnmet:
      return "HypothesisUnmet";
    case ErrorCode::kConfigError:
      return "ConfigError";
    case ErrorCode::kCacheMismatch:
      return "CacheMismatch";
  }
  return "Unknown";
}

}  // namespace synlab
