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

#ifndef SYNLAB_ERROR_HPP_
#define SYNLAB_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace synlab {

enum class ErrorCode {
  kNotPrimePower,
  kDivisionByZero,
  kDimensionMismatch,
  kNotInRowSpace,
  kNotExpressible,
  kBudgetExceeded,
  kTableTooLarge,
  kDegenerateDirection,
  kRankTooLow,
  kDesignDegenerate,
  kNotAWitness,
  kThresholdUnderflow,
  kInfeasibleBudget,
  kMissingDistance,
  kParameterViolation,
  kDistanceTooSmall,
  kNotFound,
  kDomainError,
  kAdmissibilityViolation,
  kHypothesisViolation,
  kHypothesisUnmet,
  kConfigError,
  kCacheMismatch,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library is an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised before any work is done when a cost estimate exceeds the cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t estimate, std::uint64_t cap,
                 const std::string& what)
      : Error(ErrorCode::kBudgetExceeded,
              what + " (estimate " + std::to_string(estimate) + " > cap " +
                  std::to_string(cap) + ")"),
        estimate_(estimate),
        cap_(cap) {}
  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t cap_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace synlab

#endif  // SYNLAB_ERROR_HPP_
