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

// Parameter recipes for random-code proximity gaps and correlated
// agreement, q-ary entropy, and the union-bound expressions behind them.
// Rounded quantities are computed at 50 and at 100 significant digits and
// must agree (values too large for 50 digits move up to 100 or 200); exact rational arithmetic is used wherever the quantity is
// rational.

#ifndef SYNLAB_PLANNER_HPP_
#define SYNLAB_PLANNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "json.hpp"
#include "synlab/agreement.hpp"
#include "synlab/combinatorics.hpp"

namespace synlab {

using Real = boost::multiprecision::cpp_dec_float_50;

// Results closer than this to an integer are flagged.
inline const Real kBoundaryTolerance("1e-20");

Real binary_entropy(const Real& x);

// x log_q(q-1) - x log_q x - (1-x) log_q(1-x) on 0 < x <= 1 - 1/q.
Real entropy_q(const Real& x, std::uint32_t q);
Real entropy_q(const Ratio& x, std::uint32_t q);

struct EntropyCheck {
  Real hq;
  Real identity_rhs;   // x + (H_2(x) + x log2(1 - 1/q)) / log2 q
  Real h2_bound;       // x + H_2(x) / log2 q
  std::optional<Real> eps_bound;  // x + b_eps, when q >= (2/eps)^(1/eps)
  bool identity_ok = false;
  bool h2_bound_ok = false;
  bool eps_bound_ok = true;
};

EntropyCheck entropy_bound_check(const Ratio& x, std::uint32_t q,
                                 std::optional<Ratio> eps = std::nullopt);

// eps / log2(1/eps) and eps / (1 + log2(1/eps)).
Real a_eps(const Ratio& eps);
Real b_eps(const Ratio& eps);

struct BGamma {
  std::uint64_t b = 0;  // floor((E+ + 1) / (E+ - E + 1))
  Ratio gamma;          // (d - E) / d
};

// Requires 0 < E <= E+ < d.
BGamma bexp_gamma(std::size_t e, std::size_t eplus, std::size_t d);

enum class PlanKind { kLine, kSpace, kCurve };
enum class RadiusMode { kTwoRadius, kOneRadius };

std::string plan_kind_name(PlanKind k);
std::string radius_mode_name(RadiusMode m);

struct PlanInputs {
  PlanKind kind = PlanKind::kLine;
  RadiusMode mode = RadiusMode::kTwoRadius;
  std::size_t degree = 1;  // m for spaces, l for curves
  Ratio rate{1, 2};
  Ratio eps{1, 10};
  Ratio rho{1, 10};
  std::optional<std::size_t> n;  // required in one-radius mode
};

struct Rounded {
  BigInt value;
  std::string unrounded;  // 30 significant digits
  bool exact = false;     // computed in rational arithmetic
  double margin = 0.0;    // distance of the unrounded value to an integer
  bool near_boundary = false;
  bool stable = true;     // same value at twice the precision
  int digits = 50;        // precision the value was taken at
};

struct Plan {
  PlanInputs inputs;
  Real a_eps;
  Real b_eps;
  Real delta;
  Rounded iterations;                 // l or lambda
  Rounded threshold;                  // K or tau
  std::optional<Rounded> q_entropy;   // (2/eps)^(1/eps), when the recipe uses it
  std::optional<Rounded> q_simple;    // (2/eps)^(2/eps), two-radius only
  BigInt q_min;
  std::optional<std::size_t> r;       // ceil((1-R) n)
  std::optional<std::size_t> e;
  std::optional<std::size_t> eplus;
  std::optional<Rounded> d_n;
  Real exponent;                      // proof exponent, must be < 0
  Real distance_exponent;             // min-distance event exponent
  bool stable = true;

  bool exponent_negative() const { return exponent < 0; }
};

// Throws kAdmissibilityViolation naming the failed inequality.
Plan make_plan(const PlanInputs& in);

nlohmann::json plan_to_json(const Plan& p);
std::string plan_to_text(const Plan& p);

struct AuditGrid {
  std::vector<Ratio> rates{{1, 4}, {1, 2}, {3, 4}};
  std::vector<Ratio> epsilons{{1, 20}, {1, 10}};
  std::size_t rho_steps = 20;  // interior points of the admissible interval
  std::vector<std::size_t> degrees{1, 2, 3};
};

struct AuditReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;          // grid points with no admissible rho
  std::vector<std::string> violations;
  Real max_exponent = -1000;
  std::size_t unstable = 0;

  bool ok() const { return violations.empty() && unstable == 0; }
};

AuditReport run_exponent_audit(PlanKind kind, RadiusMode mode,
                               const AuditGrid& grid);

struct UnionBoundInputs {
  PlanKind kind = PlanKind::kLine;
  std::size_t degree = 1;
  std::size_t n = 0;
  std::uint32_t q = 2;
  std::size_t r = 0;
  std::size_t e = 0;
  std::size_t eplus = 0;
  std::uint64_t k = 0;
  std::size_t s = 0;
  std::size_t d = 0;
};

struct UnionBound {
  bool zero = false;  // some binomial vanishes: probability bound is 0
  Real log_q;         // meaningful when !zero
  BigInt ball;        // |B_E|
};

// Throws kHypothesisViolation when K does not exceed the rank threshold.
UnionBound union_bound(const UnionBoundInputs& in);

struct VolumeReport {
  BigInt volume;
  Real log_q_volume;
  Real entropy_estimate;  // H_q(E/n) n
};

// Exact ball volume beside the entropy estimate; requires E/n <= 1 - 1/q.
VolumeReport volume_vs_entropy(std::size_t n, std::uint32_t q, std::size_t e);

}  // namespace synlab

#endif  // SYNLAB_PLANNER_HPP_
