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

// Witness matrices: low-weight preimages of many points of one syndrome
// line, space or curve, and the rank-reduction machinery that extracts a
// word-space parametrization from them.

#ifndef SYNLAB_WITNESS_HPP_
#define SYNLAB_WITNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synlab/code.hpp"
#include "synlab/geometry.hpp"

namespace synlab {

struct EvaluationDesign {
  ObjectKind kind = ObjectKind::kLine;
  std::size_t degree = 1;             // 1 for lines, m, or l
  std::vector<DesignPoint> points;    // K pairwise distinct points

  std::size_t size() const { return points.size(); }
  EvaluationDesign restrict_to(const std::vector<std::size_t>& idx) const;
};

// (degree+1) x K: the all-ones row and the coordinate or power rows.
Matrix design_rows(const Field& f, const EvaluationDesign& design);

// Rank of design_rows equals degree+1.
bool design_has_full_rank(const Field& f, const EvaluationDesign& design);

struct WitnessMatrix {
  AffineObject target;        // syndrome object, coefficients of length r
  EvaluationDesign design;
  Matrix x;                   // n x K, column j covers design point j
  std::size_t e = 0;

  std::size_t k() const { return x.cols(); }
};

enum class WitnessFailure {
  kNone,
  kShape,
  kDuplicatePoint,
  kSyndrome,
  kWeight,
};

struct WitnessCheck {
  bool ok = true;
  WitnessFailure failure = WitnessFailure::kNone;
  std::size_t column = 0;  // first offending column
  std::string message;
};

WitnessCheck verify_witness(const WitnessMatrix& w, const LinearCode& code);

// X = coeffs * basis with the first base_rows rows of basis spanning Row(HX)
// and the remaining rows completing a basis of Row(X). The coefficient
// columns past base_rows are codewords.
struct RowExpansion {
  Matrix basis;
  std::size_t base_rows = 0;
  Matrix coeffs;
};

RowExpansion expand_witness(const WitnessMatrix& w, const LinearCode& code);

struct ReductionCertificate {
  std::vector<std::size_t> retained;  // J, indices into the input columns
  std::optional<Vec> eliminated;      // empty: rank was already lower
  std::size_t eliminated_index = 0;   // coefficient column of the codeword
  std::size_t pivot = 0;              // coordinate h0
  std::size_t rank_before = 0;
  std::size_t rank_after = 0;
  std::size_t k_before = 0;
  std::size_t support_size = 0;       // |supp(c)|
  std::size_t retained_bound = 0;     // ceil(K (|supp c| - E) / |supp c|)
  std::optional<std::size_t> distance_bound;  // ceil(K (d - E) / d)

  bool already_lower() const { return !eliminated.has_value(); }
};

struct ReductionStep {
  WitnessMatrix witness;
  ReductionCertificate cert;
};

// One elimination. `d` is a known lower bound on the minimum distance, used
// only for the distance-based retention figure and a consistency check.
ReductionStep reduce_rank_once(const WitnessMatrix& w, const LinearCode& code,
                               std::optional<std::size_t> d = std::nullopt);

// The same step driven by a caller-supplied expansion. The expansion is
// checked before use.
ReductionStep reduce_with_expansion(const WitnessMatrix& w,
                                    const LinearCode& code,
                                    const RowExpansion& expansion,
                                    std::optional<std::size_t> d = std::nullopt);

struct BaseParametrization {
  std::vector<Vec> coeffs;             // a_0..a_D with H a_i = s_i
  std::vector<std::size_t> retained;   // indices into the input columns
  WitnessMatrix witness;               // the retained witness
  std::vector<ReductionCertificate> chain;
};

// Reduces to rank h = dim span{s_i} and solves X_J = A U_J.
BaseParametrization reduce_to_base(const WitnessMatrix& w,
                                   const LinearCode& code,
                                   std::optional<std::size_t> d = std::nullopt);

enum class ThresholdVerdict { kHolds, kNotApplicable, kCounterexample };

std::string threshold_verdict_name(ThresholdVerdict v);

struct ThresholdReport {
  ThresholdVerdict verdict = ThresholdVerdict::kNotApplicable;
  std::string reason;
  std::size_t k = 0;
  std::size_t t = 0;
  std::size_t h = 0;
  MinDistance d = MinDistance::infinite();
  std::size_t b = 0;            // floor((E+ + 1)/(E+ - E + 1))
  std::uint64_t factor = 1;     // 1, q^(m-1) or l
  // K (d - E)^(t-h) and B factor d^(t-h), compared exactly.
  BigInt lhs;
  BigInt rhs;
  // The same comparison with the unfloored ratio (E+ + 1)/(E+ - E + 1).
  bool unfloored_holds = true;
  std::optional<WitnessMatrix> counterexample;
};

// `hypothesis` is the caller-verified premise: the line leaves H_E+ for
// lines, or the object has no correlated agreement for spaces and curves.
// The distance comes from `d` or the code's cache; MissingDistance
// otherwise.
ThresholdReport threshold_check(const WitnessMatrix& w, const LinearCode& code,
                                std::size_t eplus, bool hypothesis,
                                std::optional<MinDistance> d = std::nullopt);

struct SynthRequest {
  ObjectKind kind = ObjectKind::kLine;
  std::size_t degree = 1;
  std::size_t target_rank = 2;   // t
  std::size_t k = 4;             // columns
  std::size_t e = 2;
  std::uint64_t seed = 0;
  std::size_t retries = 64;
  std::uint64_t cap = kDefaultBudget;
};

// A random witness of exact rank t for a random nondegenerate target
// (h = degree + 1). Columns are sorted by design point.
WitnessMatrix synth_witness(const LinearCode& code, const SynthRequest& req);

nlohmann::json witness_to_json(const WitnessMatrix& w);
nlohmann::json certificate_to_json(const ReductionCertificate& c);

}  // namespace synlab

#endif  // SYNLAB_WITNESS_HPP_
