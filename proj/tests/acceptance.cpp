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

// Acceptance run: eleven criteria, one PASS/FAIL line each. Exit status is
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "oracles.hpp"
#include "synlab/adversarial.hpp"
#include "synlab/agreement.hpp"
#include "synlab/ball.hpp"
#include "synlab/code.hpp"
#include "synlab/geometry.hpp"
#include "synlab/harness.hpp"
#include "synlab/planner.hpp"
#include "synlab/witness.hpp"

namespace synlab {
namespace {

namespace o = oracle;

struct Outcome {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  std::string note;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what();
  }
};

std::string vs(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Weight of a + alpha b, computed coordinate by coordinate.
std::size_t wt_axpy(const Field& f, const Vec& a, Elem alpha, const Vec& b) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) w += f.add(a[i], f.mul(alpha, b[i])) != 0;
  return w;
}

// ---------------------------------------------------------------------------
// 1. Word-space lines against two Hamming balls, exhaustively.
Outcome line_ball_exhaustive() {
  Outcome out;
  for (std::uint32_t q : {2u, 3u}) {
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    for (std::size_t n = 1; n <= 5; ++n) {
      const std::vector<Vec> pts = o::all_vectors(q, n);
      for (const Vec& a : pts) {
        for (const Vec& b : pts) {
          if (o::wt(b) == 0) continue;
          std::vector<std::size_t> w;
          for (Elem al = 0; al < q; ++al) w.push_back(wt_axpy(f, a, al, b));
          const std::size_t top = *std::max_element(w.begin(), w.end());
          for (std::size_t eplus = 0; eplus <= n; ++eplus) {
            for (std::size_t e = 0; e <= eplus; ++e) {
              const std::size_t count =
                  std::count_if(w.begin(), w.end(), [&](std::size_t x) { return x <= e; });
              LineBallCount lc = line_ball_count(f, a, b, e, eplus);
              out.expect(lc.count == count && lc.contained == (top <= eplus), [&] {
                return "line_ball_count disagrees with recount at " + vs(a) + "+a" + vs(b);
              });
              // count <= (E+ + 1)/(E+ - E + 1) whenever the line leaves B_E+.
              out.expect(top <= eplus || count * (eplus - e + 1) <= eplus + 1, [&] {
                return "q=" + std::to_string(q) + " " + vs(a) + "+a" + vs(b) +
                       " E=" + std::to_string(e) + " E+=" + std::to_string(eplus) +
                       " count=" + std::to_string(count);
              });
            }
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2. Degenerate syndrome lines meet H_E in 0, 1 or q parameter values.
Outcome degenerate_lines() {
  Outcome out;
  Rng rng(2002);
  const std::vector<std::uint32_t> qs{2, 3, 4, 5};
  for (int c = 0; c < 100; ++c) {
    const std::uint32_t q = qs[c % 4];
    std::size_t nmax = 10;
    while (sat_pow(q, nmax) > 2000000) --nmax;
    const std::size_t n = rng.between(2, nmax);
    const std::size_t r = rng.between(1, std::min<std::size_t>(5, n));
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    LinearCode code = sample_code(n, r, fp, rng.next());
    std::vector<SyndromeSet> balls = enumerate_balls_up_to(code, n);
    if (sat_pow(q, n) <= 20000) {
      // The library ball against the brute-force image of B_E.
      for (std::size_t e = 0; e <= n; ++e)
        out.expect(o::syndrome_ball(f, code.parity_check(), e).size() == balls[e].size(),
                   [&] { return "ball size mismatch"; });
    }
    const std::vector<Vec> pts = o::all_vectors(q, r);
    for (std::size_t e = 0; e <= n; ++e) {
      auto one = [&](const Vec& s0, const Vec& s1) {
        std::size_t count = 0;
        for (Elem al = 0; al < q; ++al) {
          Vec p(r);
          for (std::size_t i = 0; i < r; ++i) p[i] = f.add(s0[i], f.mul(al, s1[i]));
          count += balls[e].contains(p);
        }
        LineClassification lc = classify_line(f, {s0, s1}, balls[e]);
        out.expect(lc.degenerate && lc.count == count, [&] { return "classify_line mismatch"; });
        out.expect(count == 0 || count == 1 || count == q, [&] {
          return "q=" + std::to_string(q) + " n=" + std::to_string(n) + " E=" +
                 std::to_string(e) + " " + vs(s0) + "+a" + vs(s1) + " count " +
                 std::to_string(count);
        });
      };
      for (const Vec& s0 : pts) one(s0, Vec(r, 0));
      for (std::size_t i = 1; i < pts.size(); ++i)
        for (Elem lam = 0; lam < q; ++lam) {
          Vec s0(r);
          for (std::size_t j = 0; j < r; ++j) s0[j] = f.mul(lam, pts[i][j]);
          one(s0, pts[i]);
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 3. d(y, C) <= E exactly when Hy lies in H_E.
Outcome distance_equivalence() {
  Outcome out;
  Rng rng(2003);
  const std::vector<std::uint32_t> qs{2, 3, 4, 5};
  for (int c = 0; c < 100; ++c) {
    const std::uint32_t q = qs[c % 4];
    std::size_t nmax = 9;
    while (sat_pow(q, nmax) > 60000) --nmax;
    const std::size_t n = rng.between(2, nmax);
    const std::size_t r = rng.between(1, n);
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    LinearCode code = sample_code(n, r, fp, rng.next());
    const std::vector<Vec> words = o::codewords(f, code.parity_check());
    for (int i = 0; i < 10; ++i) {
      Vec y = o::random_vector(f, n, rng);
      if (i % 2 == 0) {
        Vec e = o::random_weight_vector(f, n, rng.below(n / 2 + 1), rng);
        const Vec& cw = words[rng.below(words.size())];
        for (std::size_t j = 0; j < n; ++j) y[j] = f.add(cw[j], e[j]);
      }
      std::size_t best = n;
      for (const Vec& cw : words) {
        std::size_t d = 0;
        for (std::size_t j = 0; j < n; ++j) d += cw[j] != y[j];
        best = std::min(best, d);
      }
      const std::size_t e = rng.below(n + 1);
      NearestCodeword nc = distance_to_code(code, y);
      SyndromeSet ball = enumerate_ball(code, e);
      out.expect(nc.distance == best, [&] { return "distance_to_code mismatch on " + vs(y); });
      out.expect((best <= e) == ball.contains(o::apply(f, code.parity_check(), y)), [&] {
        return "y=" + vs(y) + " d=" + std::to_string(best) + " E=" + std::to_string(e);
      });
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 4. The no-slack pair: weight profile and certificates.
Outcome no_slack() {
  Outcome out;
  Rng rng(2004);
  const std::vector<std::uint32_t> qs{3, 4, 5, 7, 8, 9, 11};
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t q = qs[rng.below(qs.size())];
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    const std::size_t n = rng.between(3, 16);
    const std::size_t e = rng.below(n - 1);
    const std::size_t k = rng.between(1, std::min<std::size_t>(e + 1, q - 1));
    std::vector<std::size_t> idx = rng.subset(q, k);
    std::vector<Elem> alphas(idx.begin(), idx.end());
    rng.shuffle(alphas);
    const CoordinatePolicy pol = i % 2 ? CoordinatePolicy::kPermutation : CoordinatePolicy::kPrefix;
    NoSlackInstance inst = build_no_slack_pair(f, n, e, k, alphas, pol, rng.next());
    for (Elem a = 0; a < q; ++a) {
      const bool chosen = std::find(alphas.begin(), alphas.end(), a) != alphas.end();
      const std::size_t w = wt_axpy(f, inst.x1, a, inst.x2);
      out.expect(w == (chosen ? e : e + 1), [&] {
        return "q=" + std::to_string(q) + " n=" + std::to_string(n) + " E=" + std::to_string(e) +
               " K=" + std::to_string(k) + " alpha=" + std::to_string(a) + " weight " +
               std::to_string(w);
      });
    }
  }

  struct Setting {
    std::uint32_t q;
    std::size_t n, r, e;
  };
  const std::vector<Setting> settings{{8, 12, 8, 1}, {7, 10, 6, 1}, {9, 12, 8, 2}, {8, 14, 10, 2}};
  int certified = 0;
  for (int i = 0; i < 12; ++i) {
    const Setting& s = settings[i % settings.size()];
    FieldPtr fp = make_field(s.q);
    const Field& f = *fp;
    CodeSearch cs = find_code_with_distance(s.n, s.r, fp, 2 * s.e + 2, 200, 4000 + i);
    // Independent distance: minimum weight over every codeword.
    std::size_t dmin = s.n + 1;
    for_each_codeword(cs.code, [&](const Vec& c) {
      const std::size_t w = o::wt(c);
      if (w > 0) dmin = std::min(dmin, w);
      return true;
    });
    out.expect(dmin >= 2 * s.e + 2, [&] { return "code search returned d=" + std::to_string(dmin); });
    const std::size_t k = std::min<std::size_t>(s.e + 1, s.q - 1);
    std::vector<std::size_t> idx = rng.subset(s.q, k);
    std::vector<Elem> alphas(idx.begin(), idx.end());
    NoSlackInstance inst =
        build_no_slack_pair(f, s.n, s.e, k, alphas, CoordinatePolicy::kPermutation, rng.next());
    ViolationCertificate cert = certify_violation(cs.code, inst);
    // Re-verify against a fresh exhaustive enumeration of H_E.
    SyndromeSet ball = enumerate_ball(cs.code, s.e);
    const Vec s0 = o::apply(f, cs.code.parity_check(), inst.x1);
    const Vec s1 = o::apply(f, cs.code.parity_check(), inst.x2);
    std::size_t in = 0;
    bool outside = false;
    for (Elem a = 0; a < s.q; ++a) {
      Vec p(s.r);
      for (std::size_t j = 0; j < s.r; ++j) p[j] = f.add(s0[j], f.mul(a, s1[j]));
      if (ball.contains(p)) ++in;
      else outside = true;
    }
    out.expect(in >= k && outside && cert.holds() && cert.count == in &&
                   recheck_certificate(cs.code, cert),
               [&] { return "certificate " + std::to_string(i) + ": count " + std::to_string(in); });
    certified += in >= k && outside;
  }
  out.expect(certified >= 10, [&] { return "only " + std::to_string(certified) + " certificates"; });
  out.note = std::to_string(certified) + " certificates";
  return out;
}

// ---------------------------------------------------------------------------
// 5. Rank reduction on synthetic witnesses.
bool witness_ok(const Field& f, const LinearCode& code, const WitnessMatrix& w) {
  for (std::size_t j = 0; j < w.k(); ++j) {
    const Vec x = w.x.col(j);
    if (o::wt(x) > w.e) return false;
    if (o::apply(f, code.parity_check(), x) != evaluate(f, w.target, w.design.points[j])) return false;
  }
  std::set<DesignPoint> distinct(w.design.points.begin(), w.design.points.end());
  return distinct.size() == w.k();
}

Outcome rank_reduction() {
  Outcome out;
  Rng rng(2005);
  int done = 0;
  std::map<std::size_t, int> by_excess;
  int close_codes = 0;
  const std::vector<std::uint32_t> qs{5, 7, 8, 9};
  for (int attempt = 0; done < 200 && attempt < 4000; ++attempt) {
    const ObjectKind kind = std::array<ObjectKind, 3>{ObjectKind::kLine, ObjectKind::kSpace,
                                                      ObjectKind::kCurve}[attempt % 3];
    const std::size_t excess = 1 + (attempt / 3) % 3;
    const std::uint32_t q = qs[rng.below(qs.size())];
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    const std::size_t n = rng.between(10, 14);
    const std::size_t r = rng.between(5, 7);
    LinearCode code = sample_code(n, r, fp, rng.next());
    SynthRequest req;
    req.kind = kind;
    req.degree = kind == ObjectKind::kLine ? 1 : 2;
    req.e = rng.between(2, 3);
    req.target_rank = req.degree + 1 + excess;
    const std::size_t pts = kind == ObjectKind::kSpace ? q * q : q;
    req.k = std::min<std::size_t>(pts, req.target_rank + rng.between(0, 3));
    req.seed = rng.next();
    WitnessMatrix w;
    try {
      w = synth_witness(code, req);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasibleBudget) throw;
      continue;
    }
    ++done;
    ++by_excess[excess];
    if (!min_distance(code).distance.at_least(req.e + 1)) ++close_codes;
    out.expect(witness_ok(f, code, w), [] { return "synthesized witness is invalid"; });
    DistanceResult dr = min_distance(code);
    std::optional<std::size_t> d;
    if (!dr.distance.is_infinite()) d = dr.distance.value();
    const std::size_t h = o::rank_by_span(f, w.target.coeffs, r);
    WitnessMatrix cur = w;
    while (rank(f, cur.x) > h && cur.k() > 0) {
      ReductionStep step = reduce_rank_once(cur, code, d);
      const ReductionCertificate& c = step.cert;
      out.expect(witness_ok(f, code, step.witness), [] { return "step breaks witness predicate"; });
      if (c.already_lower()) break;
      const std::size_t rank_after = rank(f, step.witness.x);
      const std::size_t sz = o::wt(*c.eliminated);
      // ceil(K (|supp c| - E) / |supp c|)
      const std::size_t bound = sz > cur.e ? (cur.k() * (sz - cur.e) + sz - 1) / sz : 0;
      // With d > E every codeword leaves B_E, so the retention bound bites.
      const bool far = dr.distance.at_least(cur.e + 1);
      const std::size_t dbound =
          far && d ? (cur.k() * (*d - cur.e) + *d - 1) / *d : 0;
      out.expect(rank_after < rank(f, cur.x) && step.witness.k() >= bound &&
                     c.retained.size() == step.witness.k() &&
                     step.witness.k() >= dbound &&
                     o::wt(o::apply(f, code.parity_check(), *c.eliminated)) == 0 &&
                     (!far || sz > cur.e),
                 [&] {
                   return object_kind_name(kind) + " step: rank " +
                          std::to_string(rank(f, cur.x)) + "->" + std::to_string(rank_after) +
                          " h=" + std::to_string(h) + " kept " +
                          std::to_string(step.witness.k()) + "/" + std::to_string(cur.k()) +
                          " bound " + std::to_string(bound) + " supp " + std::to_string(sz) +
                          " E=" + std::to_string(cur.e) + " cert " +
                          std::to_string(c.rank_before) + "->" + std::to_string(c.rank_after);
                 });
      cur = step.witness;
    }
    try {
      BaseParametrization base = reduce_to_base(w, code, d);
      bool ok = base.coeffs.size() == w.target.coeffs.size();
      for (std::size_t i = 0; ok && i < base.coeffs.size(); ++i)
        ok = o::apply(f, code.parity_check(), base.coeffs[i]) == w.target.coeffs[i];
      AffineObject param{kind, base.coeffs};
      for (std::size_t j = 0; ok && j < base.retained.size(); ++j)
        ok = evaluate(f, param, base.witness.design.points[j]) == base.witness.x.col(j) &&
             base.witness.x.col(j) == w.x.col(base.retained[j]);
      out.expect(ok, [&] { return object_kind_name(kind) + " parametrization identity"; });
    } catch (const Error& e) {
      out.expect(e.code() == ErrorCode::kHypothesisUnmet,
                 [&] { return std::string("reduce_to_base: ") + e.what(); });
    }
  }
  out.expect(done == 200, [&] { return "only " + std::to_string(done) + " witnesses synthesized"; });
  std::ostringstream note;
  note << done << " witnesses, t-h";
  for (const auto& [x, c] : by_excess) note << " " << x << ":" << c;
  note << ", " << close_codes << " with d <= E";
  out.note = note.str();
  return out;
}

// ---------------------------------------------------------------------------
// 6. Spaces and curves against B_E when the coefficient row support is large.

// Weight histogram plus row support, for deduplicated bound checks.
struct Profile {
  std::vector<std::size_t> hist;  // hist[w] = points of weight w
  std::size_t supp = 0;
  bool operator<(const Profile& o) const {
    return std::tie(hist, supp) < std::tie(o.hist, o.supp);
  }
};

void check_profile(Outcome& out, const Profile& p, std::size_t n, std::uint64_t factor,
                   bool space, std::uint32_t q, std::size_t degree) {
  std::vector<std::size_t> weights;
  for (std::size_t w = 0; w < p.hist.size(); ++w)
    for (std::size_t i = 0; i < p.hist[w]; ++i) weights.push_back(w);
  for (std::size_t eplus = 0; eplus <= n; ++eplus) {
    for (std::size_t e = 0; e <= eplus; ++e) {
      std::uint64_t count = 0;
      for (std::size_t w = 0; w <= e && w < p.hist.size(); ++w) count += p.hist[w];
      const bool applies = p.supp > eplus;
      const bool within = !applies || count * (eplus - e + 1) <= factor * (eplus + 1);
      bool lib_within;
      if (space) {
        SpaceBallCount sc = space_ball_count_from_profile(weights, p.supp, q, degree, e, eplus);
        lib_within = sc.count == count && sc.applies == applies &&
                     (!applies || sc.count * sc.bound_den <= sc.bound_num);
      } else {
        CurveBallCount cc = curve_ball_count_from_profile(weights, p.supp, degree, e, eplus);
        lib_within = cc.count == count && cc.applies == applies && cc.within_bound();
      }
      out.expect(within && lib_within, [&] {
        return std::string(space ? "space" : "curve") + " supp=" + std::to_string(p.supp) +
               " E=" + std::to_string(e) + " E+=" + std::to_string(eplus) +
               " count=" + std::to_string(count);
      });
    }
  }
}

Outcome ball_bounds_spaces_curves() {
  Outcome out;
  // Exhaustive over F_3 with plain mod-3 arithmetic on base-3 codes.
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= 3;
    std::vector<std::uint8_t> digit(size * n), weight(size), mask(size);
    for (std::size_t v = 0; v < size; ++v) {
      std::size_t x = v;
      for (std::size_t i = 0; i < n; ++i) {
        digit[v * n + i] = x % 3;
        x /= 3;
        if (digit[v * n + i]) {
          ++weight[v];
          mask[v] |= 1u << i;
        }
      }
    }
    auto combine = [&](std::size_t a, std::size_t b, unsigned s) {
      std::size_t out = 0, p = 1;
      for (std::size_t i = 0; i < n; ++i, p *= 3) out += ((digit[a * n + i] + s * digit[b * n + i]) % 3) * p;
      return out;
    };
    std::vector<std::size_t> add(size * size), dbl(size);
    for (std::size_t a = 0; a < size; ++a) {
      dbl[a] = combine(0, a, 2);
      for (std::size_t b = 0; b < size; ++b) add[a * size + b] = combine(a, b, 1);
    }
    std::set<Profile> spaces, curves, lines;
    for (std::size_t u0 = 0; u0 < size; ++u0) {
      for (std::size_t u1 = 0; u1 < size; ++u1) {
        const std::size_t m1[3] = {0, u1, dbl[u1]};
        Profile line{std::vector<std::size_t>(n + 1, 0), std::size_t(__builtin_popcount(mask[u0] | mask[u1]))};
        for (int a = 0; a < 3; ++a) ++line.hist[weight[add[u0 * size + m1[a]]]];
        lines.insert(line);
        for (std::size_t u2 = 0; u2 < size; ++u2) {
          const std::size_t m2[3] = {0, u2, dbl[u2]};
          const std::size_t supp = __builtin_popcount(mask[u0] | mask[u1] | mask[u2]);
          Profile sp{std::vector<std::size_t>(n + 1, 0), supp};
          Profile cu{std::vector<std::size_t>(n + 1, 0), supp};
          for (int a = 0; a < 3; ++a) {
            const std::size_t base = add[u0 * size + m1[a]];
            for (int b = 0; b < 3; ++b) ++sp.hist[weight[add[base * size + m2[b]]]];
            // alpha^2 is 0, 1, 1 for alpha = 0, 1, 2.
            ++cu.hist[weight[add[base * size + m2[a == 0 ? 0 : 1]]]];
          }
          spaces.insert(sp);
          curves.insert(cu);
        }
      }
    }
    for (const Profile& p : lines) {
      check_profile(out, p, n, 1, true, 3, 1);
      check_profile(out, p, n, 1, false, 3, 1);
    }
    for (const Profile& p : spaces) check_profile(out, p, n, 3, true, 3, 2);
    for (const Profile& p : curves) check_profile(out, p, n, 2, false, 3, 2);
  }

  // Random larger instances through the library entry points.
  Rng rng(2006);
  const std::vector<std::uint32_t> qs{4, 5, 7, 8, 9};
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t q = qs[rng.below(qs.size())];
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    const std::size_t n = rng.between(5, 12);
    const bool space = i % 2 == 0;
    const std::size_t deg = space ? (q <= 5 ? rng.between(2, 3) : 2) : rng.between(2, 4);
    std::vector<std::size_t> sup = rng.subset(n, rng.between(1, n));
    std::vector<Vec> c(deg + 1, Vec(n, 0));
    for (Vec& v : c)
      for (std::size_t j : sup)
        if (rng.below(3)) v[j] = static_cast<Elem>(rng.below(q));
    AffineObject obj =
        space ? make_space(c[0], std::vector<Vec>(c.begin() + 1, c.end())) : make_curve(c);
    std::vector<std::size_t> weights;
    for (const DesignPoint& p : all_design_points(f, obj.kind, deg))
      weights.push_back(o::wt(evaluate(f, obj, p)));
    std::size_t supp = 0;
    for (std::size_t j = 0; j < n; ++j) {
      bool any = false;
      for (const Vec& v : c) any = any || v[j] != 0;
      supp += any;
    }
    const std::uint64_t factor = space ? sat_pow(q, deg - 1) : deg;
    const std::size_t eplus = rng.below(n);
    const std::size_t e = rng.below(eplus + 1);
    const std::uint64_t count =
        std::count_if(weights.begin(), weights.end(), [&](std::size_t w) { return w <= e; });
    bool lib_ok;
    if (space) {
      SpaceBallCount sc = space_ball_count(f, obj, e, eplus);
      lib_ok = sc.count == count && sc.supp_size == supp &&
               (!sc.applies || sc.count * sc.bound_den <= sc.bound_num);
    } else {
      CurveBallCount cc = curve_ball_count(f, obj, e, eplus);
      lib_ok = cc.count == count && cc.row_weight == supp && cc.within_bound();
    }
    out.expect(lib_ok && (supp <= eplus || count * (eplus - e + 1) <= factor * (eplus + 1)),
               [&] {
                 return std::string(space ? "space" : "curve") + " q=" + std::to_string(q) +
                        " n=" + std::to_string(n) + " count=" + std::to_string(count);
               });
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Syndrome-side CA decision against codeword-tuple brute force.
// Smallest |union_j supp(u_j - c_j)| over all codeword tuples.
std::size_t best_union(const Field& f, const std::vector<Vec>& u, const std::vector<Vec>& words) {
  const std::size_t n = u[0].size();
  std::size_t best = n;
  std::vector<std::size_t> idx(u.size(), 0);
  while (true) {
    std::size_t mask_wt = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < u.size() && !any; ++j) any = u[j][i] != words[idx[j]][i];
      mask_wt += any;
    }
    best = std::min(best, mask_wt);
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == words.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  (void)f;
  return best;
}

Outcome ca_equivalence() {
  Outcome out;
  std::uint64_t exhaustive = 0, sampled = 0;
  auto compare = [&](const LinearCode& code, const AffineObject& obj,
                     const std::vector<Vec>& words) {
    const Field& f = code.field();
    const std::size_t best = best_union(f, obj.coeffs, words);
    std::vector<Vec> targets;
    for (const Vec& u : obj.coeffs) targets.push_back(o::apply(f, code.parity_check(), u));
    for (std::size_t eplus = 0; eplus <= code.n(); ++eplus) {
      CAResult res = ca_decide(code, targets, eplus);
      out.expect(res.decision == (best <= eplus) &&
                     (!res.decision || ca_witness_valid(code, targets, eplus, res)),
                 [&] {
                   return object_kind_name(obj.kind) + " q=" + std::to_string(f.q()) +
                          " n=" + std::to_string(code.n()) + " E+=" + std::to_string(eplus) +
                          " brute " + std::to_string(best) + " decide " +
                          std::to_string(res.decision);
                 });
    }
  };
  // Exhaustive: q = 2, n = 3, every coefficient tuple.
  {
    FieldPtr fp = make_field(2);
    Rng rng(2007);
    for (int c = 0; c < 3; ++c) {
      LinearCode code = sample_code(3, 2, fp, rng.next());
      const std::vector<Vec> words = o::codewords(*fp, code.parity_check());
      const std::vector<Vec> pts = o::all_vectors(2, 3);
      for (const Vec& a : pts)
        for (const Vec& b : pts) {
          compare(code, make_line(a, b), words);
          ++exhaustive;
          for (const Vec& g : pts) {
            compare(code, make_space(a, {b, g}), words);
            compare(code, make_curve({a, b, g}), words);
            exhaustive += 2;
          }
        }
    }
  }
  // Sampled: q in {2, 3}, n <= 8, with low-weight structure planted.
  Rng rng(2077);
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t q = 2 + i % 2;
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    const int kind = i % 3;
    const std::size_t deg = kind == 0 ? 1 : 2;
    const std::size_t n = rng.between(3, 8);
    std::size_t r = rng.between(1, n);
    while (sat_pow(q, (n - r) * (deg + 1)) > 20000) ++r;
    LinearCode code = sample_code(n, r, fp, rng.next());
    const std::vector<Vec> words = o::codewords(f, code.parity_check());
    std::vector<std::size_t> t = rng.subset(n, rng.below(n + 1));
    std::vector<Vec> c(deg + 1, Vec(n, 0));
    for (Vec& v : c) {
      for (std::size_t j : t) v[j] = static_cast<Elem>(rng.below(q));
      const Vec& w = words[rng.below(words.size())];
      for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], w[j]);
    }
    AffineObject obj = kind == 0 ? make_line(c[0], c[1])
                       : kind == 1 ? make_space(c[0], {c[1], c[2]})
                                   : make_curve(c);
    compare(code, obj, words);
    ++sampled;
  }
  out.note = std::to_string(exhaustive) + " exhaustive, " + std::to_string(sampled) + " sampled";
  return out;
}

// ---------------------------------------------------------------------------
// 8. H X is uniform over uniform H.
Outcome uniform_image() {
  Outcome out;
  const std::uint64_t samples = 10000;
  double worst = 0;
  for (std::uint32_t q : {2u, 3u}) {
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    for (std::size_t r : {1u, 2u}) {
      for (std::size_t t : {1u, 2u}) {
        const std::size_t n = 5;
        std::vector<Vec> cols;
        if (t == 1) {
          cols = {Vec{1, 2 % q, 0, 1, 0}, Vec{2 % q, 1, 0, 2 % q, 0}};
          if (q == 2) cols[1] = cols[0];
        } else {
          cols = {Vec{1, 0, 1, 1, 0}, Vec{0, 1, 1, 0, 1}, Vec{1, 1, 2 % q, 1, 1}};
        }
        Matrix x = Matrix::from_columns(
            std::vector<Vec>(cols.begin(), cols.begin() + t), n);
        out.expect(o::rank_by_span(f, cols, n) == t, [] { return "wrong test rank"; });
        // Own sampler: uniform H, tally H X restricted to a column basis.
        Rng rng(derive_seed(2008, "uniform", q * 100 + r * 10 + t));
        const std::size_t cells = sat_pow(q, r * t);
        std::vector<std::uint64_t> counts(cells, 0);
        std::vector<std::size_t> basis = t == 1 ? std::vector<std::size_t>{0}
                                                : std::vector<std::size_t>{0, 1};
        for (std::uint64_t s = 0; s < samples; ++s) {
          Matrix h = o::random_matrix(f, r, n, rng);
          std::uint64_t key = 0;
          for (std::size_t row = 0; row < r; ++row)
            for (std::size_t j : basis) {
              Elem acc = 0;
              for (std::size_t i = 0; i < n; ++i) acc = f.add(acc, f.mul(h.at(row, i), cols[j][i]));
              key = key * q + acc;
            }
          ++counts[key];
        }
        const double expected = static_cast<double>(samples) / cells;
        const double sigma = std::sqrt(expected * (1.0 - 1.0 / cells));
        for (std::uint64_t cnt : counts) {
          const double z = std::abs(static_cast<double>(cnt) - expected) / sigma;
          worst = std::max(worst, z);
          out.expect(z < 5.0, [&] {
            return "q=" + std::to_string(q) + " r=" + std::to_string(r) + " t=" +
                   std::to_string(t) + " z=" + std::to_string(z);
          });
        }
        // Library table over the full column set.
        UniformImageTable tab = uniform_image_test(f, x, r, samples, 2008 + q * 100 + r * 10 + t);
        std::size_t nonzero = 0;
        for (std::uint64_t cnt : tab.counts) nonzero += cnt > 0;
        out.expect(tab.max_sigma < 5.0 && nonzero <= sat_pow(q, r * t), [&] {
          return "library table q=" + std::to_string(q) + " r=" + std::to_string(r) + " t=" +
                 std::to_string(t) + " max sigma " + std::to_string(tab.max_sigma);
        });
      }
    }
  }
  std::ostringstream note;
  note << "max |z| " << std::fixed << std::setprecision(2) << worst;
  out.note = note.str();
  return out;
}

// ---------------------------------------------------------------------------
// 9. Planner: entropy, audits, worked plan, rounding stability.
Outcome planner() {
  Outcome out;
  for (std::uint32_t q : {2u, 3u, 4u, 7u, 16u, 1024u}) {
    const double h = entropy_q(Ratio{q - 1, q}, q).convert_to<double>();
    out.expect(std::abs(h - 1.0) < 1e-12, [&] { return "H_q(1-1/q) at q=" + std::to_string(q); });
  }
  // Entropy grid against a long double evaluation of both inequalities.
  int grid = 0;
  for (std::uint32_t q : {2u, 3u, 5u, 16u, 1024u}) {
    for (std::uint64_t i = 1; i <= 20; ++i) {
      const Ratio x{i, 42};
      if (x.num * q > x.den * (q - 1)) continue;
      ++grid;
      const long double xd = static_cast<long double>(i) / 42;
      const long double lq = std::log2(static_cast<long double>(q));
      const long double h2 = -xd * std::log2(xd) - (1 - xd) * std::log2(1 - xd);
      const long double hq = (xd * std::log2(static_cast<long double>(q - 1)) + h2) / lq;
      EntropyCheck ec = entropy_bound_check(x, q);
      out.expect(ec.identity_ok && ec.h2_bound_ok &&
                     std::abs(ec.hq.convert_to<long double>() - hq) < 1e-12L &&
                     hq <= xd + h2 / lq + 1e-15L,
                 [&] { return "entropy at x=" + x.to_string() + " q=" + std::to_string(q); });
    }
  }
  out.expect(grid >= 90, [&] { return "entropy grid has " + std::to_string(grid) + " points"; });
  std::size_t audited = 0;
  for (PlanKind k : {PlanKind::kLine, PlanKind::kSpace, PlanKind::kCurve}) {
    for (RadiusMode m : {RadiusMode::kTwoRadius, RadiusMode::kOneRadius}) {
      AuditReport rep = run_exponent_audit(k, m, AuditGrid{});
      audited += rep.checked;
      out.expect(rep.ok() && rep.checked > 0 && rep.max_exponent < 0, [&] {
        return plan_kind_name(k) + " " + radius_mode_name(m) + ": " +
               (rep.violations.empty() ? std::to_string(rep.unstable) + " unstable"
                                       : rep.violations.front());
      });
    }
  }
  PlanInputs in;
  in.rate = {1, 2};
  in.eps = {1, 10};
  in.rho = {1, 10};
  Plan p = make_plan(in);
  const double a = 0.1 / std::log2(10.0);
  out.expect(p.iterations.value == 9 && std::abs(p.a_eps.convert_to<double>() - a) < 1e-12 &&
                 std::abs(p.a_eps.convert_to<double>() - 0.030103) < 1e-6 && p.stable,
             [&] { return "worked plan: l=" + p.iterations.value.str(); });
  out.note = std::to_string(audited) + " audited plans";
  return out;
}

// ---------------------------------------------------------------------------
// 10. Line-level gap or CA lifts to 2-dimensional flats.
Outcome lifting() {
  Outcome out;
  FieldPtr fp = make_field(4);
  const Field& f = *fp;
  const std::uint32_t q = 4;
  std::uint64_t hypothesis_unmet = 0, flats = 0;
  for (int c = 0; c < 20; ++c) {
    LinearCode code = sample_code(8, 4, fp, derive_seed(2010, "lifting", c));
    std::vector<std::set<Vec>> balls;
    for (std::size_t e = 0; e <= 2; ++e) balls.push_back(o::syndrome_ball(f, code.parity_check(), e));
    const std::vector<SyndromeLine> lines = enumerate_syndrome_lines(f, 4);
    const std::vector<Flat> planes = enumerate_flats(f, 4, 2);
    auto pts_of = [&](const Vec& base, const std::vector<Vec>& dirs) {
      std::vector<Vec> pts;
      for (const Vec& co : o::all_vectors(q, dirs.size())) {
        Vec p = base;
        for (std::size_t i = 0; i < dirs.size(); ++i)
          for (std::size_t j = 0; j < p.size(); ++j) p[j] = f.add(p[j], f.mul(co[i], dirs[i][j]));
        pts.push_back(p);
      }
      return pts;
    };
    for (std::size_t eplus : {1u, 2u}) {
      const std::size_t e = 1;
      // Gap: worst count over lines that leave H_E+.
      std::uint64_t worst = 0;
      for (const SyndromeLine& l : lines) {
        std::uint64_t in = 0;
        bool contained = true;
        for (const Vec& p : pts_of(l.s0, {l.s1})) {
          in += balls[e].count(p);
          contained = contained && balls[eplus].count(p);
        }
        if (!contained) worst = std::max(worst, in);
      }
      for (const Flat& fl : planes) {
        std::uint64_t in = 0;
        bool contained = true;
        for (const Vec& p : pts_of(fl.base, fl.dirs)) {
          in += balls[e].count(p);
          contained = contained && balls[eplus].count(p);
        }
        ++flats;
        // in/q^2 > (worst/q) q/(q-1) forces containment.
        out.expect(contained || in * (q - 1) <= worst * q * q, [&] {
          return "gap code " + std::to_string(c) + " E+=" + std::to_string(eplus) +
                 " flat count " + std::to_string(in) + " line worst " + std::to_string(worst);
        });
      }
      LiftingReport lib = lifting_test(code, e, eplus, {});
      out.expect(lib.status == LiftingStatus::kPass && lib.tau_star.num == worst &&
                     lib.tau_star.den == q,
                 [&] { return "lifting_test disagrees on code " + std::to_string(c); });
    }
    // CA variant at E+ = E = 1, after checking the list-size hypothesis.
    std::map<Vec, std::size_t> list;
    for (const Vec& x : o::all_vectors(q, 8))
      if (o::wt(x) <= 1) ++list[o::apply(f, code.parity_check(), x)];
    std::size_t max_list = 0;
    for (const auto& [s, cnt] : list) max_list = std::max(max_list, cnt);
    LiftingOptions opt;
    opt.mode = LiftingMode::kCa;
    LiftingReport lib = lifting_test(code, 1, 1, opt);
    if (max_list >= q) {
      ++hypothesis_unmet;
      out.expect(lib.status == LiftingStatus::kHypothesisUnmet,
                 [&] { return "hypothesis unmet but reported " + lifting_status_name(lib.status); });
      continue;
    }
    std::uint64_t worst = 0;
    for (const SyndromeLine& l : lines) {
      for (std::size_t ep = 0; ep <= 1; ++ep) {
        std::uint64_t in = 0;
        for (const Vec& p : pts_of(l.s0, {l.s1})) in += balls[ep].count(p);
        if (in > worst && !ca_decide(code, {l.s0, l.s1}, ep).decision) worst = in;
      }
    }
    for (const Flat& fl : planes) {
      std::uint64_t in = 0;
      for (const Vec& p : pts_of(fl.base, fl.dirs)) in += balls[1].count(p);
      if (in * (q - 1) <= worst * q * q) continue;
      std::vector<Vec> targets{fl.base, fl.dirs[0], fl.dirs[1]};
      out.expect(ca_decide(code, targets, 1).decision, [&] {
        return "ca code " + std::to_string(c) + " flat count " + std::to_string(in);
      });
    }
    out.expect(lib.status == LiftingStatus::kPass,
               [&] { return "ca lifting_test reported " + lifting_status_name(lib.status); });
  }
  out.note = std::to_string(flats) + " flat checks, CA hypothesis unmet on " +
             std::to_string(hypothesis_unmet) + "/20 codes";
  return out;
}

// ---------------------------------------------------------------------------
// 11. Harness determinism.
std::string strip_first_line(const std::string& s) { return s.substr(s.find('\n') + 1); }

Outcome determinism() {
  Outcome out;
  std::vector<ExperimentConfig> cfgs;
  auto base = [](ExperimentMode m) {
    ExperimentConfig c;
    c.mode = m;
    c.trials = 6;
    c.samples = 200;
    c.master_seed = 77;
    c.records = RecordFilter::kAll;
    return c;
  };
  cfgs.push_back(base(ExperimentMode::kLineGap));
  {
    ExperimentConfig c = base(ExperimentMode::kLineGap);
    c.q = 8;
    c.enumeration = Enumeration::kFull;
    c.trials = 2;
    c.records = RecordFilter::kNontrivial;
    c.attach_no_slack = true;
    c.budget = 200000000;
    cfgs.push_back(c);
  }
  {
    ExperimentConfig c = base(ExperimentMode::kSpaceGap);
    c.degree = 2;
    cfgs.push_back(c);
  }
  {
    ExperimentConfig c = base(ExperimentMode::kSpaceCa);
    c.degree = 2;
    c.eplus = 1;
    cfgs.push_back(c);
  }
  {
    ExperimentConfig c = base(ExperimentMode::kCurveCa);
    c.q = 5;
    c.degree = 2;
    cfgs.push_back(c);
  }
  {
    ExperimentConfig c = base(ExperimentMode::kNoSlack);
    c.q = 8;
    c.n = 12;
    c.r = 8;
    c.eplus = 1;
    cfgs.push_back(c);
  }
  {
    ExperimentConfig c = base(ExperimentMode::kReduceDemo);
    c.q = 7;
    c.n = 12;
    c.r = 6;
    c.e = 3;
    c.eplus = 3;
    c.demo_kind = ObjectKind::kCurve;
    c.degree = 2;
    cfgs.push_back(c);
  }
  std::uint64_t records = 0;
  for (ExperimentConfig cfg : cfgs) {
    const std::string name = mode_name(cfg.mode);
    ExperimentResult a = run_experiment(cfg);
    ExperimentResult b = run_experiment(cfg);
    cfg.jobs = 3;
    ExperimentResult par = run_experiment(cfg);
    const std::string ca = records_to_csv(a, "first");
    out.expect(strip_first_line(ca) == strip_first_line(records_to_csv(b, "second")),
               [&] { return name + ": re-run differs"; });
    out.expect(strip_first_line(ca) == strip_first_line(records_to_csv(par, "third")),
               [&] { return name + ": parallel run differs"; });
    nlohmann::json ja = result_to_json(a, "x"), jp = result_to_json(par, "y");
    ja.erase("generated");
    jp.erase("generated");
    out.expect(ja == jp, [&] { return name + ": JSON differs"; });
    // Every record is re-derivable from its trial index alone.
    for (std::uint64_t t = 0; t < cfg.trials; t += 2) {
      std::vector<TrialRecord> again = run_trial(cfg, t);
      std::vector<TrialRecord> orig;
      for (const TrialRecord& r : a.records)
        if (r.trial_index == t) orig.push_back(r);
      ExperimentResult x, y;
      x.config = y.config = cfg;
      x.records = again;
      y.records = orig;
      out.expect(records_to_csv(x, "") == records_to_csv(y, ""),
                 [&] { return name + ": trial " + std::to_string(t) + " not re-derivable"; });
    }
    out.expect(!a.summary.failed(), [&] { return name + ": run reports failures"; });
    records += a.records.size();
  }
  // Soak: 20 codes x 1000 sampled planes, no CA counterexample.
  ExperimentConfig soak = base(ExperimentMode::kSpaceCa);
  soak.degree = 2;
  soak.eplus = 1;
  soak.trials = 20;
  soak.samples = 1000;
  soak.records = RecordFilter::kNontrivial;
  ExperimentResult sr = run_experiment(soak);
  out.expect(!sr.summary.failed() && sr.summary.objects == 20000, [&] {
    return "soak: " + std::to_string(sr.summary.threshold_counterexamples) + " counterexamples";
  });
  out.note = std::to_string(records) + " records per run, soak " +
             std::to_string(sr.summary.objects) + " planes";
  return out;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  Outcome (*run)();
};

}  // namespace
}  // namespace synlab

int main() {
  using namespace synlab;
  const std::vector<Criterion> criteria = {
      {1, "line ball bound, exhaustive q<=3 n<=5", 120, line_ball_exhaustive},
      {2, "degenerate syndrome lines", 120, degenerate_lines},
      {3, "distance vs syndrome-ball membership", 120, distance_equivalence},
      {4, "no-slack construction and certificates", 300, no_slack},
      {5, "rank reduction on synthetic witnesses", 300, rank_reduction},
      {6, "space and curve ball bounds", 300, ball_bounds_spaces_curves},
      {7, "CA decision vs codeword brute force", 300, ca_equivalence},
      {8, "uniform syndrome images", 60, uniform_image},
      {9, "planner entropy, audits, worked plan", 60, planner},
      {10, "lifting from lines to planes", 600, lifting},
      {11, "harness determinism", 120, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    std::string error;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = error.empty() && out.failures == 0 && out.checks > 0 && s <= c.limit_s;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.name
              << ": " << out.checks << " checks, " << out.failures << " failures";
    if (!out.note.empty()) std::cout << ", " << out.note;
    std::cout << " (" << std::fixed << std::setprecision(2) << s << " s, limit " << c.limit_s
              << " s)\n";
    if (!error.empty()) std::cout << "     exception: " << error << "\n";
    if (!out.first_failure.empty()) std::cout << "     first failure: " << out.first_failure << "\n";
    std::cout.flush();
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << "\n";
  return failed ? 1 : 0;
}
