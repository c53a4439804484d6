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

#ifndef SYNLAB_AGREEMENT_HPP_
#define SYNLAB_AGREEMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synlab/ball.hpp"
#include "synlab/code.hpp"
#include "synlab/geometry.hpp"

namespace synlab {

// Non-negative rational num/den, den > 0.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  std::string to_string() const;
};

// a/b > c/d, exactly.
bool ratio_greater(std::uint64_t a, std::uint64_t b, const Ratio& r);
bool operator<(const Ratio& a, const Ratio& b);
bool operator==(const Ratio& a, const Ratio& b);

// Parses "0.25", "3/8" or "1" without rounding.
Ratio parse_ratio(const std::string& text);

struct CAResult {
  bool decision = false;
  std::optional<Matrix> x;                       // n x (D+1), H x_i = s_i
  std::optional<std::vector<std::size_t>> support;  // minimal T
};

// Searches supports T by size, then lexicographically, for one with every
// target in the column span of H restricted to T.
CAResult ca_decide(const LinearCode& code, const std::vector<Vec>& targets,
                   std::size_t eplus, std::uint64_t cap = kDefaultBudget);

// Re-checks a positive result: equations and row weight.
bool ca_witness_valid(const LinearCode& code, const std::vector<Vec>& targets,
                      std::size_t eplus, const CAResult& res);

struct CrossCheck {
  bool word_side = false;      // codeword tuple with small joint support
  bool syndrome_side = false;  // ca_decide on the image
  std::size_t best_union = 0;  // smallest |union supp(c_j - u_j)| found
  bool agree() const { return word_side == syndrome_side; }
};

// Brute force over codeword tuples against ca_decide on the push-forward.
CrossCheck reformulation_crosscheck(const LinearCode& code,
                                    const AffineObject& word_object,
                                    std::size_t eplus,
                                    std::uint64_t cap = kDefaultBudget);

struct GapReport {
  ObjectKind kind = ObjectKind::kLine;
  std::size_t dim = 0;          // rank of the direction / power vectors
  // Over every parameter value: q, q^m or q evaluations.
  std::uint64_t eval_count = 0;
  std::uint64_t eval_total = 0;
  // Over the distinct points of the object.
  std::uint64_t set_count = 0;
  std::uint64_t set_size = 0;
  bool contained = false;       // every point in H_E+

  Ratio eval_ratio() const { return {eval_count, eval_total}; }
  Ratio set_ratio() const { return {set_count, set_size}; }
  // count >= K + 1 and not contained.
  bool violates(std::uint64_t k) const {
    return eval_count >= k + 1 && !contained;
  }
};

GapReport gap_check_line(const Field& f, const SyndromeLine& line,
                         const SyndromeSet& ball_e,
                         const SyndromeSet& ball_eplus);

// Any syndrome object: line, space or curve.
GapReport gap_check_object(const Field& f, const AffineObject& obj,
                           const SyndromeSet& ball_e,
                           const SyndromeSet& ball_eplus,
                           std::uint64_t cap = kDefaultBudget);

enum class LiftingMode { kGap, kCa };

enum class LiftingStatus {
  kPass,
  kSpaceViolation,     // consequent failed: must not happen
  kAntecedentFailed,   // a line breaks the property at the requested tau
  kHypothesisUnmet,    // list size >= q somewhere (ca mode)
};

std::string lifting_status_name(LiftingStatus s);

struct LiftingOptions {
  LiftingMode mode = LiftingMode::kGap;
  std::size_t max_dim = 2;
  // Line-level tau. When absent the smallest tau the lines satisfy is used.
  std::optional<Ratio> tau;
  std::uint64_t cap = kDefaultBudget;
};

struct LiftingReport {
  LiftingStatus status = LiftingStatus::kPass;
  Ratio tau_star;              // smallest tau the lines satisfy
  Ratio tau;                   // line-level tau used
  Ratio space_threshold;       // tau q / (q - 1)
  std::uint64_t lines_checked = 0;
  std::uint64_t flats_checked = 0;
  std::uint64_t flats_above_threshold = 0;
  std::size_t max_list_size = 0;
  std::optional<SyndromeLine> failing_line;
  std::vector<Flat> violations;
};

// Checks that the line property at tau lifts to every flat of dimension
// 2..max_dim at tau q / (q - 1). In ca mode E+ must equal E and the line
// property is required for every radius up to E.
LiftingReport lifting_test(const LinearCode& code, std::size_t e,
                           std::size_t eplus, const LiftingOptions& opt);

// max over syndromes of the number of weight <= E preimages, which is the
// largest number of codewords within distance E of a single word.
std::size_t max_list_size(const LinearCode& code, std::size_t e,
                          std::uint64_t cap = kDefaultBudget);

}  // namespace synlab

#endif  // SYNLAB_AGREEMENT_HPP_
