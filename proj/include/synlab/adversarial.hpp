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

// A word pair (x1, x2) whose line hits weight exactly E at K chosen
// parameters and E+1 everywhere else, and its assembly with a code of
// distance >= 2E+2 into a line with K points in H_E that is not contained
// in H_E.

#ifndef SYNLAB_ADVERSARIAL_HPP_
#define SYNLAB_ADVERSARIAL_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "synlab/ball.hpp"
#include "synlab/code.hpp"
#include "synlab/geometry.hpp"

namespace synlab {

enum class CoordinatePolicy { kPrefix, kPermutation };

struct NoSlackInstance {
  std::size_t n = 0;
  std::uint32_t q = 0;
  std::size_t e = 0;
  std::size_t k = 0;
  std::vector<Elem> alphas;
  Vec x1;
  Vec x2;
  std::vector<std::size_t> i_coords;  // K coordinates, x2 = indicator
  std::vector<std::size_t> j_coords;  // E+1-K coordinates where x1 = 1
  std::vector<std::size_t> weights;   // wt(x1 + a x2) for a = 0..q-1
};

// Preconditions 1 <= K <= E+1 < n, K < q and distinct alphas; violations
// throw kParameterViolation naming the inequality. The permutation policy
// draws the coordinates from a seeded shuffle of [n].
NoSlackInstance build_no_slack_pair(const Field& f, std::size_t n,
                                    std::size_t e, std::size_t k,
                                    const std::vector<Elem>& alphas,
                                    CoordinatePolicy policy = CoordinatePolicy::kPrefix,
                                    std::uint64_t seed = 0);

// Recomputes every weight: exactly the alphas give E, the rest E+1.
bool verify_weight_profile(const Field& f, const NoSlackInstance& inst);

struct BallMember {
  Elem alpha = 0;
  Vec syndrome;
  Vec preimage;  // weight <= E, H preimage = syndrome
};

struct ViolationCertificate {
  NoSlackInstance instance;
  SyndromeLine line;                  // (H x1, H x2)
  MinDistance distance = MinDistance::infinite();
  bool distinct = false;              // the K chosen points differ
  std::vector<BallMember> members;    // every parameter landing in H_E
  Elem excluded_alpha = 0;            // weight E+1, outside H_E
  Vec excluded_syndrome;
  bool excluded_outside = false;
  std::size_t count = 0;

  bool holds() const {
    return distinct && count >= instance.k && excluded_outside;
  }
};

// Requires d(C) >= 2E+2 (the zero code counts as infinite distance);
// otherwise kDistanceTooSmall with a low-weight codeword in the message.
// `ball_e` may be passed to reuse an enumeration of H_E.
ViolationCertificate certify_violation(const LinearCode& code,
                                       const NoSlackInstance& inst,
                                       const SyndromeSet* ball_e = nullptr,
                                       std::uint64_t cap = kDefaultBudget);

// Independent re-check from the stored data and a fresh enumeration of H_E.
bool recheck_certificate(const LinearCode& code,
                         const ViolationCertificate& cert,
                         std::uint64_t cap = kDefaultBudget);

struct CodeSearch {
  LinearCode code;
  std::uint64_t seed = 0;        // the sample_code seed that won
  std::size_t tries = 0;
  MinDistance distance = MinDistance::infinite();
};

// Rejection sampling over seeds derive_seed(seed, "code", i), i < max_tries.
// kNotFound reports the best distance seen.
CodeSearch find_code_with_distance(std::size_t n, std::size_t r, FieldPtr field,
                                   std::size_t d_target, std::size_t max_tries,
                                   std::uint64_t seed,
                                   std::uint64_t cap = kDefaultBudget);

nlohmann::json instance_to_json(const NoSlackInstance& inst);
nlohmann::json violation_to_json(const ViolationCertificate& cert,
                                 std::optional<std::uint64_t> code_seed = std::nullopt);

}  // namespace synlab

#endif  // SYNLAB_ADVERSARIAL_HPP_
