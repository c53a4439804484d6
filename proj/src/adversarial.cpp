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

#include "synlab/adversarial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "synlab/rng.hpp"

namespace synlab {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kParameterViolation, "violated: " + what);
}

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

NoSlackInstance build_no_slack_pair(const Field& f, std::size_t n,
                                    std::size_t e, std::size_t k,
                                    const std::vector<Elem>& alphas,
                                    CoordinatePolicy policy,
                                    std::uint64_t seed) {
  require(k >= 1, "1 <= K");
  require(k <= e + 1, "K <= E+1");
  require(e + 1 < n, "E+1 < n");
  require(k < f.q(), "K < q");
  require(alphas.size() == k, "exactly K alphas");
  for (Elem a : alphas) require(a < f.q(), "alphas are field elements");
  require(std::set<Elem>(alphas.begin(), alphas.end()).size() == k,
          "alphas pairwise distinct");

  std::vector<std::size_t> coords(n);
  std::iota(coords.begin(), coords.end(), 0);
  if (policy == CoordinatePolicy::kPermutation) {
    Rng rng(seed);
    rng.shuffle(coords);
  }

  NoSlackInstance inst;
  inst.n = n;
  inst.q = f.q();
  inst.e = e;
  inst.k = k;
  inst.alphas = alphas;
  inst.x1.assign(n, 0);
  inst.x2.assign(n, 0);
  inst.i_coords.assign(coords.begin(), coords.begin() + k);
  inst.j_coords.assign(coords.begin() + k, coords.begin() + e + 1);
  for (std::size_t t = 0; t < k; ++t) {
    inst.x2[inst.i_coords[t]] = f.one();
    inst.x1[inst.i_coords[t]] = f.neg(alphas[t]);
  }
  for (std::size_t j : inst.j_coords) inst.x1[j] = f.one();
  for (Elem a = 0; a < f.q(); ++a)
    inst.weights.push_back(weight(vec_axpy(f, inst.x1, a, inst.x2)));
  if (!verify_weight_profile(f, inst))
    throw Error(ErrorCode::kParameterViolation, "weight profile check failed");
  return inst;
}

bool verify_weight_profile(const Field& f, const NoSlackInstance& inst) {
  std::set<Elem> chosen(inst.alphas.begin(), inst.alphas.end());
  std::size_t at_e = 0;
  for (Elem a = 0; a < f.q(); ++a) {
    const std::size_t w = weight(vec_axpy(f, inst.x1, a, inst.x2));
    const bool pick = chosen.count(a) > 0;
    if (w != (pick ? inst.e : inst.e + 1)) return false;
    at_e += pick;
  }
  return at_e == inst.k;
}

ViolationCertificate certify_violation(const LinearCode& code,
                                       const NoSlackInstance& inst,
                                       const SyndromeSet* ball_e,
                                       std::uint64_t cap) {
  const Field& f = code.field();
  if (inst.n != code.n() || inst.q != f.q())
    throw Error(ErrorCode::kDimensionMismatch, "instance does not match code");
  DistanceResult dr = code.cached_distance() ? *code.cached_distance()
                                             : min_distance(code, cap);
  if (!dr.distance.at_least(2 * inst.e + 2)) {
    std::string msg = "d(C) = " + dr.distance.to_string() + " < 2E+2 = " +
                      std::to_string(2 * inst.e + 2);
    if (dr.witness) msg += ", codeword " + vec_string(*dr.witness);
    throw Error(ErrorCode::kDistanceTooSmall, msg);
  }

  std::optional<SyndromeSet> own;
  if (ball_e == nullptr || ball_e->radius() != inst.e) {
    own = enumerate_ball(code, inst.e, cap);
    ball_e = &*own;
  }

  ViolationCertificate cert;
  cert.instance = inst;
  cert.distance = dr.distance;
  cert.line = SyndromeLine{code.syndrome(inst.x1), code.syndrome(inst.x2)};

  std::set<Vec> chosen_points;
  for (Elem a : inst.alphas)
    chosen_points.insert(vec_axpy(f, cert.line.s0, a, cert.line.s1));
  cert.distinct = chosen_points.size() == inst.k;

  std::set<Elem> chosen(inst.alphas.begin(), inst.alphas.end());
  bool have_excluded = false;
  for (Elem a = 0; a < f.q(); ++a) {
    Vec s = vec_axpy(f, cert.line.s0, a, cert.line.s1);
    if (const Vec* pre = ball_e->preimage(s)) {
      cert.members.push_back(BallMember{a, s, *pre});
    } else if (!have_excluded && !chosen.count(a)) {
      have_excluded = true;
      cert.excluded_alpha = a;
      cert.excluded_syndrome = s;
      cert.excluded_outside = true;
    }
  }
  cert.count = cert.members.size();
  return cert;
}

bool recheck_certificate(const LinearCode& code,
                         const ViolationCertificate& cert, std::uint64_t cap) {
  const Field& f = code.field();
  const NoSlackInstance& inst = cert.instance;
  if (!verify_weight_profile(f, inst)) return false;
  if (code.syndrome(inst.x1) != cert.line.s0 ||
      code.syndrome(inst.x2) != cert.line.s1)
    return false;
  std::set<Vec> seen;
  for (const BallMember& m : cert.members) {
    if (vec_axpy(f, cert.line.s0, m.alpha, cert.line.s1) != m.syndrome) return false;
    if (weight(m.preimage) > inst.e || code.syndrome(m.preimage) != m.syndrome)
      return false;
    seen.insert(m.syndrome);
  }
  if (seen.size() < inst.k) return false;
  if (!cert.excluded_outside ||
      cert.excluded_syndrome !=
          vec_axpy(f, cert.line.s0, cert.excluded_alpha, cert.line.s1))
    return false;
  return !enumerate_ball(code, inst.e, cap).contains(cert.excluded_syndrome);
}

CodeSearch find_code_with_distance(std::size_t n, std::size_t r, FieldPtr field,
                                   std::size_t d_target, std::size_t max_tries,
                                   std::uint64_t seed, std::uint64_t cap) {
  std::optional<MinDistance> best;
  for (std::size_t i = 0; i < max_tries; ++i) {
    const std::uint64_t s = derive_seed(seed, "code", i);
    LinearCode code = sample_code(n, r, field, s);
    DistanceResult dr = min_distance(code, cap);
    code.store_distance(dr);
    if (dr.distance.at_least(d_target))
      return CodeSearch{std::move(code), s, i + 1, dr.distance};
    if (!best || dr.distance.value() > best->value()) best = dr.distance;
  }
  throw Error(ErrorCode::kNotFound,
              "no code with d >= " + std::to_string(d_target) + " in " +
                  std::to_string(max_tries) + " tries; best d = " +
                  (best ? best->to_string() : std::string("none")));
}

nlohmann::json instance_to_json(const NoSlackInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["q"] = inst.q;
  j["E"] = inst.e;
  j["K"] = inst.k;
  j["alphas"] = inst.alphas;
  j["x1"] = inst.x1;
  j["x2"] = inst.x2;
  j["i_coords"] = inst.i_coords;
  j["j_coords"] = inst.j_coords;
  j["weights"] = inst.weights;
  return j;
}

nlohmann::json violation_to_json(const ViolationCertificate& cert,
                                 std::optional<std::uint64_t> code_seed) {
  nlohmann::json j;
  j["instance"] = instance_to_json(cert.instance);
  j["code_seed"] = code_seed ? nlohmann::json(*code_seed) : nlohmann::json();
  j["distance"] = cert.distance.to_string();
  j["line"] = {{"s0", cert.line.s0}, {"s1", cert.line.s1}};
  nlohmann::json members = nlohmann::json::array();
  for (const BallMember& m : cert.members)
    members.push_back({{"alpha", m.alpha}, {"syndrome", m.syndrome}, {"preimage", m.preimage}});
  j["members"] = members;
  j["count"] = cert.count;
  j["distinct"] = cert.distinct;
  j["excluded"] = {{"alpha", cert.excluded_alpha},
                   {"syndrome", cert.excluded_syndrome},
                   {"outside", cert.excluded_outside}};
  j["holds"] = cert.holds();
  return j;
}

}  // namespace synlab
