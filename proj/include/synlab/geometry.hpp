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

#ifndef SYNLAB_GEOMETRY_HPP_
#define SYNLAB_GEOMETRY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synlab/ball.hpp"
#include "synlab/code.hpp"

namespace synlab {

// Affine lines u0 + a u1, affine spaces u0 + sum b_i u_i and polynomial
// curves u0 + sum a^i u_i share one representation: a list of coefficient
// vectors and a rule turning an evaluation point into multipliers.
enum class ObjectKind { kLine, kSpace, kCurve };

std::string object_kind_name(ObjectKind kind);

// Evaluation point: one element for lines and curves, m for spaces.
using DesignPoint = std::vector<Elem>;

struct AffineObject {
  ObjectKind kind = ObjectKind::kLine;
  std::vector<Vec> coeffs;  // u0, u1, ..., length 2 / m+1 / l+1

  // m for spaces, l for curves, 1 for lines.
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  std::size_t length() const { return coeffs.empty() ? 0 : coeffs[0].size(); }
};

AffineObject make_line(Vec a, Vec b);
AffineObject make_space(Vec u0, std::vector<Vec> dirs);
AffineObject make_curve(std::vector<Vec> coeffs);

// Multipliers of the coefficient vectors at a point: (1, a), (1, b_1..b_m)
// or (1, a, a^2, ..., a^l).
Vec design_column(const Field& f, ObjectKind kind, std::size_t degree,
                  const DesignPoint& point);

Vec evaluate(const Field& f, const AffineObject& obj, const DesignPoint& point);

// Every evaluation point of the object's parameter space, in lexicographic
// order: q points for lines and curves, q^m for spaces.
std::vector<DesignPoint> all_design_points(const Field& f, ObjectKind kind,
                                           std::size_t degree);

// dim span{u_0, ..., u_D}.
std::size_t coefficient_rank(const Field& f, const AffineObject& obj);

// The image under H, coefficient by coefficient.
AffineObject push_forward(const LinearCode& code, const AffineObject& obj);

struct SyndromeLine {
  Vec s0;
  Vec s1;
};

enum class LineCountClass { kZero, kOne, kAll, kOther };

struct LineClassification {
  bool degenerate = false;  // dim span{s0, s1} <= 1
  std::size_t dim = 0;
  std::size_t count = 0;    // |L cap H_E| over the q parameter values
  LineCountClass count_class = LineCountClass::kOther;
};

LineClassification classify_line(const Field& f, const SyndromeLine& line,
                                 const SyndromeSet& ball);

// Word-space line a + alpha b against the Hamming balls B_E and B_E+.
struct LineBallCount {
  std::size_t count = 0;          // |l cap B_E|
  bool contained = false;         // l inside B_E+
  std::size_t bound = 0;          // floor((E+ + 1) / (E+ - E + 1))
  // The bound applies only when the line leaves B_E+.
  bool within_bound() const { return contained || count <= bound; }
};

LineBallCount line_ball_count(const Field& f, const Vec& a, const Vec& b,
                              std::size_t e, std::size_t eplus);

// floor((E+ + 1) / (E+ - E + 1)).
std::size_t line_bound(std::size_t e, std::size_t eplus);

// Weights of an object at each parameter point, in all_design_points order.
std::vector<std::size_t> weight_profile(const Field& f, const AffineObject& obj);

struct SpaceBallCount {
  std::size_t count = 0;       // points of weight <= E over q^m evaluations
  std::size_t supp_size = 0;   // rowwt([u0 | ... | um])
  // (E+ + 1) q^(m-1) / (E+ - E + 1) as a fraction. Flooring the ratio
  // before scaling by q^(m-1) is not a valid bound for m >= 2.
  std::uint64_t bound_num = 0;
  std::uint64_t bound_den = 1;
  std::uint64_t bound = 0;     // floor(bound_num / bound_den)
  bool applies = false;        // supp_size > E+
  bool within_bound() const { return !applies || count <= bound; }
};

SpaceBallCount space_ball_count(const Field& f, const AffineObject& space,
                                std::size_t e, std::size_t eplus,
                                std::uint64_t cap = kDefaultBudget);
SpaceBallCount space_ball_count_from_profile(
    const std::vector<std::size_t>& profile, std::size_t supp_size,
    std::uint32_t q, std::size_t m, std::size_t e, std::size_t eplus);

struct CurveBallCount {
  std::size_t count = 0;
  std::size_t row_weight = 0;
  // l (E+ + 1) / (E+ - E + 1) as a fraction.
  std::uint64_t bound_num = 0;
  std::uint64_t bound_den = 1;
  bool applies = false;  // row_weight > E+
  bool within_bound() const {
    return !applies || count * bound_den <= bound_num;
  }
};

CurveBallCount curve_ball_count(const Field& f, const AffineObject& curve,
                                std::size_t e, std::size_t eplus);
CurveBallCount curve_ball_count_from_profile(
    const std::vector<std::size_t>& profile, std::size_t row_wt,
    std::size_t ell, std::size_t e, std::size_t eplus);

// Canonical lines of F_q^r as unordered point sets: s0 is the
// lexicographically smallest point and s1 the direction scaled so its first
// nonzero entry is 1. Without a filter every line is listed, in order of
// (s0, s1). With a filter only lines through at least two filter points are
// listed.
std::vector<SyndromeLine> enumerate_syndrome_lines(
    const Field& f, std::size_t r, const std::vector<Vec>* filter = nullptr,
    std::uint64_t cap = kDefaultBudget);

// q^r (q^r - 1) / (q (q - 1)).
std::uint64_t syndrome_line_count(std::uint32_t q, std::size_t r);

// Canonical affine flats of dimension dim in F_q^r: base is the
// lexicographically smallest point and dirs the reduced echelon basis.
struct Flat {
  Vec base;
  std::vector<Vec> dirs;
};

std::vector<Flat> enumerate_flats(const Field& f, std::size_t r,
                                  std::size_t dim,
                                  std::uint64_t cap = kDefaultBudget);

}  // namespace synlab

#endif  // SYNLAB_GEOMETRY_HPP_
