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

#include "synlab/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

#include "synlab/adversarial.hpp"
#include "synlab/agreement.hpp"
#include "synlab/ball.hpp"
#include "synlab/code.hpp"
#include "synlab/geometry.hpp"
#include "synlab/planner.hpp"
#include "synlab/rng.hpp"
#include "synlab/witness.hpp"

namespace synlab {
namespace {

constexpr std::size_t kMaxMessages = 5;

class Suite {
 public:
  Suite(SuiteResult& out) : out_(out) {}

  void check(bool ok, const std::function<std::string()>& what) {
    ++out_.checks;
    if (ok) return;
    ++out_.failures;
    if (out_.messages.size() < kMaxMessages) out_.messages.push_back(what());
  }

 private:
  SuiteResult& out_;
};

struct Ctx {
  const SelftestOptions& opt;
  bool full() const { return opt.level == SelftestLevel::kFull; }
  std::uint64_t seed(std::string_view tag) const { return derive_seed(opt.seed, tag, 0); }
};

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Vec random_vec(Rng& rng, std::uint32_t q, std::size_t len) {
  Vec v(len);
  for (auto& x : v) x = static_cast<Elem>(rng.below(q));
  return v;
}

// Every vector of F_q^n in codec order.
std::vector<Vec> all_vectors(std::uint32_t q, std::size_t n) {
  VectorCodec codec(q, n);
  std::vector<Vec> out;
  for (std::uint64_t i = 0; i < codec.space_size(); ++i) out.push_back(codec.decode(i));
  return out;
}

std::size_t max_of(const std::vector<std::size_t>& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

void field_axioms(const Ctx& ctx, Suite& s) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    Field f = Field::make(q);
    if (ctx.opt.corrupt_field_entry) f = f.with_corrupted_product(*ctx.opt.corrupt_field_entry);
    FieldAxiomReport rep = check_field_axioms(f, ctx.full() ? 1u << 16 : 4096);
    s.check(rep.ok, [&] { return "GF(" + std::to_string(q) + "): " + rep.first_failure; });
  }
}

void degenerate_lines(const Ctx& ctx, Suite& s) {
  Rng rng(ctx.seed("degenerate"));
  const int codes = ctx.full() ? 100 : 20;
  for (int c = 0; c < codes; ++c) {
    const std::uint32_t q = std::array<std::uint32_t, 4>{2, 3, 4, 5}[rng.below(4)];
    std::size_t nmax = 10;
    while (sat_pow(q, nmax) > (ctx.full() ? 2000000u : 100000u)) --nmax;
    const std::size_t n = rng.between(2, nmax);
    const std::size_t r = rng.between(1, std::min<std::size_t>(5, n));
    FieldPtr fp = make_field(q);
    const Field& f = *fp;
    LinearCode code = sample_code(n, r, fp, rng.next());
    std::vector<SyndromeSet> balls = enumerate_balls_up_to(code, n);
    std::vector<Vec> pts = all_vectors(q, r);
    for (std::size_t e = 0; e <= n; ++e) {
      auto one = [&](const Vec& s0, const Vec& s1) {
        LineClassification lc = classify_line(f, {s0, s1}, balls[e]);
        std::size_t count = 0;
        for (Elem a = 0; a < q; ++a)
          count += balls[e].contains(vec_axpy(f, s0, a, s1)) ? 1 : 0;
        s.check(lc.degenerate && lc.count == count &&
                    (count == 0 || count == 1 || count == q) &&
                    lc.count_class != LineCountClass::kOther,
                [&] {
                  return "q=" + std::to_string(q) + " E=" + std::to_string(e) + " line " +
                         vec_str(s0) + "+a" + vec_str(s1) + " count " + std::to_string(count);
                });
      };
      // s1 = 0 with a sampled s0, then s0 = lambda s1.
      one(pts[rng.below(pts.size())], Vec(r, 0));
      for (std::size_t i = 1; i < pts.size(); ++i)
        one(vec_scale(f, static_cast<Elem>(rng.below(q)), pts[i]), pts[i]);
    }
  }
}

void line_ball_bound(const Ctx& ctx, Suite& s) {
  for (std::uint32_t q : {2u, 3u}) {
    const std::size_t nmax = ctx.full() ? 5 : (q == 2 ? 4 : 3);
    FieldPtr fp = make_field(q);
    for (std::size_t n = 1; n <= nmax; ++n) {
      std::vector<Vec> pts = all_vectors(q, n);
      for (const Vec& a : pts) {
        for (std::size_t bi = 1; bi < pts.size(); ++bi) {
          const Vec& b = pts[bi];
          std::vector<std::size_t> w = weight_profile(*fp, make_line(a, b));
          const std::size_t top = max_of(w);
          for (std::size_t eplus = 0; eplus <= n; ++eplus) {
            for (std::size_t e = 0; e <= eplus; ++e) {
              const std::size_t count =
                  std::count_if(w.begin(), w.end(), [&](std::size_t x) { return x <= e; });
              const bool leaves = top > eplus;
              // count (E+ - E + 1) <= E+ + 1
              s.check(!leaves || count * (eplus - e + 1) <= eplus + 1, [&] {
                return "line " + vec_str(a) + "+a" + vec_str(b) + " E=" + std::to_string(e) +
                       " E+=" + std::to_string(eplus);
              });
            }
          }
          if (bi % 7 == 0) {
            const std::size_t e = n / 3, eplus = n / 2;
            LineBallCount lc = line_ball_count(*fp, a, b, e, eplus);
            const std::size_t count =
                std::count_if(w.begin(), w.end(), [&](std::size_t x) { return x <= e; });
            s.check(lc.count == count && lc.contained == (top <= eplus) && lc.within_bound(),
                    [&] { return "line_ball_count disagrees on " + vec_str(a) + "+a" + vec_str(b); });
          }
        }
      }
    }
  }
}

// Checks count <= bound from a weight profile over all (E, E+).
template <class Bound>
void profile_grid(Suite& s, const std::vector<std::size_t>& w, std::size_t supp, std::size_t n,
                  const Bound& bound, const std::function<std::string()>& label) {
  for (std::size_t eplus = 0; eplus <= n; ++eplus) {
    if (supp <= eplus) continue;
    for (std::size_t e = 0; e <= eplus; ++e) {
      const std::uint64_t count =
          std::count_if(w.begin(), w.end(), [&](std::size_t x) { return x <= e; });
      s.check(bound(count, e, eplus), [&] {
        return label() + " E=" + std::to_string(e) + " E+=" + std::to_string(eplus);
      });
    }
  }
}

void multi_ball_bound(const Ctx& ctx, Suite& s, ObjectKind kind) {
  auto make = [&](std::vector<Vec> c) {
    if (kind == ObjectKind::kCurve) return make_curve(std::move(c));
    Vec u0 = c[0];
    c.erase(c.begin());
    return make_space(u0, c);
  };
  // count (E+ - E + 1) <= factor (E+ + 1), factor q^(m-1) or l.
  auto run = [&](const Field& f, const AffineObject& obj, std::size_t n) {
    const std::uint64_t factor = kind == ObjectKind::kSpace
                                     ? sat_pow(f.q(), obj.degree() - 1)
                                     : obj.degree();
    std::vector<std::size_t> w = weight_profile(f, obj);
    Matrix a = Matrix::from_columns(obj.coeffs, n);
    const std::size_t supp = row_weight(a);
    profile_grid(
        s, w, supp, n,
        [&](std::uint64_t count, std::size_t e, std::size_t eplus) {
          return count * (eplus - e + 1) <= factor * (eplus + 1);
        },
        [&] { return object_kind_name(kind) + " over GF(" + std::to_string(f.q()) + ")"; });
  };
  FieldPtr f3 = make_field(3);
  const std::size_t nmax = ctx.full() ? 4 : 2;
  for (std::size_t n = 1; n <= nmax; ++n) {
    std::vector<Vec> pts = all_vectors(3, n);
    for (const Vec& u0 : pts)
      for (const Vec& u1 : pts)
        for (const Vec& u2 : pts) run(*f3, make({u0, u1, u2}), n);
  }
  Rng rng(ctx.seed(object_kind_name(kind)));
  const int extra = ctx.full() ? 1000 : 150;
  for (int i = 0; i < extra; ++i) {
    const std::uint32_t q = std::array<std::uint32_t, 4>{4, 5, 7, 8}[rng.below(4)];
    FieldPtr fp = make_field(q);
    const std::size_t n = rng.between(3, 8);
    const std::size_t d = kind == ObjectKind::kSpace ? rng.between(1, 2) : rng.between(1, 3);
    std::vector<Vec> c;
    // Sparse coefficients so low weights occur.
    std::vector<std::size_t> supp = rng.subset(n, rng.between(1, n));
    for (std::size_t j = 0; j <= d; ++j) {
      Vec v(n, 0);
      for (std::size_t i : supp) v[i] = static_cast<Elem>(rng.below(q));
      c.push_back(v);
    }
    AffineObject obj = make(c);
    run(*fp, obj, n);
    if (kind == ObjectKind::kSpace) {
      SpaceBallCount sc = space_ball_count(*fp, obj, n / 3, n / 2);
      s.check(!sc.applies || sc.count * sc.bound_den <= sc.bound_num,
              [&] { return "space_ball_count bound"; });
    } else {
      CurveBallCount cc = curve_ball_count(*fp, obj, n / 3, n / 2);
      s.check(cc.within_bound(), [&] { return "curve_ball_count bound"; });
    }
  }
}

void ca_equivalence(const Ctx& ctx, Suite& s) {
  Rng rng(ctx.seed("ca"));
  const int cases = ctx.full() ? 400 : 60;
  for (int i = 0; i < cases; ++i) {
    const std::uint32_t q = rng.between(2, 3);
    FieldPtr fp = make_field(q);
    const int kind = static_cast<int>(rng.below(3));
    const std::size_t deg = kind == 0 ? 1 : 2;
    const std::size_t n = rng.between(3, 6);
    std::size_t r = rng.between(1, n - 1);
    // Keep the codeword-tuple search at q^(k (deg+1)) <= 10^6.
    while (sat_pow(q, (n - r) * (deg + 1)) > 1000000) ++r;
    LinearCode code = sample_code(n, r, fp, rng.next());
    std::vector<Vec> words;
    for_each_codeword(code, [&](const Vec& c) {
      words.push_back(c);
      return true;
    });
    const std::size_t eplus = rng.below(n);
    std::vector<std::size_t> tsupp = rng.subset(n, rng.below(std::min(n, eplus + 2) + 1));
    std::vector<Vec> c(deg + 1);
    for (Vec& v : c) {
      v.assign(n, 0);
      for (std::size_t j : tsupp) v[j] = static_cast<Elem>(rng.below(q));
      v = vec_add(*fp, v, words[rng.below(words.size())]);
    }
    AffineObject obj = kind == 0   ? make_line(c[0], c[1])
                       : kind == 1 ? make_space(c[0], {c[1], c[2]})
                                   : make_curve(c);
    CrossCheck cc = reformulation_crosscheck(code, obj, eplus);
    s.check(cc.agree(), [&] {
      return object_kind_name(obj.kind) + " q=" + std::to_string(q) + " n=" + std::to_string(n) +
             " E+=" + std::to_string(eplus) + " word " + std::to_string(cc.word_side) +
             " syndrome " + std::to_string(cc.syndrome_side);
    });
    CAResult res = ca_decide(code, push_forward(code, obj).coeffs, eplus);
    s.check(!res.decision || ca_witness_valid(code, push_forward(code, obj).coeffs, eplus, res),
            [&] { return "invalid CA witness"; });
  }
}

void distance_membership(const Ctx& ctx, Suite& s) {
  Rng rng(ctx.seed("distance"));
  const int codes = ctx.full() ? 100 : 20;
  const int per_code = 10;
  for (int c = 0; c < codes; ++c) {
    const std::uint32_t q = std::array<std::uint32_t, 4>{2, 3, 4, 5}[rng.below(4)];
    FieldPtr fp = make_field(q);
    const std::size_t n = rng.between(3, q <= 3 ? 10 : 7);
    const std::size_t r = rng.between(1, n - 1);
    LinearCode code = sample_code(n, r, fp, rng.next());
    const std::size_t emax = std::min<std::size_t>(n, 3);
    std::vector<SyndromeSet> balls = enumerate_balls_up_to(code, emax);
    for (int i = 0; i < per_code; ++i) {
      Vec y = random_vec(rng, q, n);
      if (i % 2 == 0) {
        // A codeword plus a sparse error.
        Vec e(n, 0);
        for (std::size_t j : rng.subset(n, rng.below(emax + 1))) e[j] = 1 + rng.below(q - 1);
        Vec cw(n, 0);
        for (const Vec& b : code.kernel()) cw = vec_axpy(*fp, cw, static_cast<Elem>(rng.below(q)), b);
        y = vec_add(*fp, cw, e);
      }
      const std::size_t dist = distance_to_code(code, y).distance;
      const Vec syn = code.syndrome(y);
      for (std::size_t e = 0; e <= emax; ++e)
        s.check((dist <= e) == balls[e].contains(syn), [&] {
          return "y=" + vec_str(y) + " d(y,C)=" + std::to_string(dist) + " E=" + std::to_string(e);
        });
    }
  }
}

void uniform_image(const Ctx& ctx, Suite& s) {
  const std::uint64_t samples = ctx.full() ? 10000 : 2000;
  for (std::uint32_t q : {2u, 3u}) {
    FieldPtr fp = make_field(q);
    for (std::size_t r : {1u, 2u}) {
      for (std::size_t t : {1u, 2u}) {
        // n = 4, X of rank t.
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < t; ++j) {
          Vec v(4, 0);
          v[j] = 1;
          v[3] = 1;
          cols.push_back(v);
        }
        Matrix x = Matrix::from_columns(cols, 4);
        UniformImageTable tab =
            uniform_image_test(*fp, x, r, samples, derive_seed(ctx.opt.seed, "uniform", q * 10 + r * 3 + t));
        s.check(tab.max_sigma < 5.0 && tab.cells == sat_pow(q, r * t), [&] {
          return "q=" + std::to_string(q) + " r=" + std::to_string(r) + " t=" + std::to_string(t) +
                 " max sigma " + std::to_string(tab.max_sigma);
        });
      }
    }
  }
}

void rank_reduction(const Ctx& ctx, Suite& s) {
  Rng rng(ctx.seed("reduction"));
  const int cases = ctx.full() ? 200 : 30;
  int done = 0, attempts = 0;
  while (done < cases && attempts < cases * 10) {
    ++attempts;
    const int kind_i = static_cast<int>(rng.below(3));
    const ObjectKind kind = kind_i == 0 ? ObjectKind::kLine
                            : kind_i == 1 ? ObjectKind::kSpace
                                          : ObjectKind::kCurve;
    const std::uint32_t q = std::array<std::uint32_t, 4>{5, 7, 8, 9}[rng.below(4)];
    FieldPtr fp = make_field(q);
    const std::size_t n = rng.between(10, 14);
    const std::size_t r = rng.between(5, 7);
    LinearCode code = sample_code(n, r, fp, rng.next());
    SynthRequest req;
    req.kind = kind;
    req.degree = kind == ObjectKind::kLine ? 1 : 2;
    req.e = rng.between(2, 3);
    req.target_rank = req.degree + 1 + rng.between(1, 3);
    const std::size_t pts = kind == ObjectKind::kSpace ? q * q : q;
    req.k = std::min<std::size_t>(pts, req.target_rank + rng.between(0, 3));
    req.seed = rng.next();
    WitnessMatrix w;
    try {
      w = synth_witness(code, req);
    } catch (const Error&) {
      continue;
    }
    ++done;
    DistanceResult dist = min_distance(code);
    std::optional<std::size_t> d;
    if (!dist.distance.is_infinite()) d = dist.distance.value();
    const Field& f = *fp;
    WitnessMatrix cur = w;
    const std::size_t h = coefficient_rank(f, w.target);
    while (rank(f, cur.x) > h) {
      ReductionStep step = reduce_rank_once(cur, code, d);
      const ReductionCertificate& c = step.cert;
      s.check(verify_witness(step.witness, code).ok, [] { return "step breaks the witness"; });
      s.check(c.already_lower() || (c.rank_after < c.rank_before &&
                                    c.retained.size() >= c.retained_bound &&
                                    code.contains(*c.eliminated)),
              [&] { return "step certificate at rank " + std::to_string(c.rank_before); });
      if (c.already_lower() || step.witness.k() == 0) break;
      cur = step.witness;
    }
    try {
      BaseParametrization base = reduce_to_base(w, code, d);
      bool ok = base.coeffs.size() == w.target.coeffs.size();
      for (std::size_t i = 0; ok && i < base.coeffs.size(); ++i)
        ok = code.syndrome(base.coeffs[i]) == w.target.coeffs[i];
      AffineObject param{kind, base.coeffs};
      for (std::size_t j = 0; ok && j < base.retained.size(); ++j)
        ok = evaluate(f, param, base.witness.design.points[j]) == base.witness.x.col(j);
      s.check(ok, [&] { return object_kind_name(kind) + " parametrization identities"; });
    } catch (const Error& e) {
      // Running out of columns is allowed only when the retained bound says so.
      s.check(e.code() == ErrorCode::kHypothesisUnmet,
              [&] { return std::string("reduce_to_base: ") + e.what(); });
    }
  }
  s.check(done > 0, [] { return "no witness could be synthesized"; });
}

void no_slack_profile(const Ctx& ctx, Suite& s) {
  Rng rng(ctx.seed("no-slack"));
  const int cases = ctx.full() ? 1000 : 100;
  const std::vector<std::uint32_t> qs{3, 4, 5, 7, 8, 9, 11};
  for (int i = 0; i < cases; ++i) {
    const std::uint32_t q = qs[rng.below(qs.size())];
    FieldPtr fp = make_field(q);
    const std::size_t n = rng.between(3, 16);
    const std::size_t e = rng.below(n - 1);  // E + 1 < n
    const std::size_t kmax = std::min<std::size_t>(e + 1, q - 1);
    const std::size_t k = rng.between(1, kmax);
    std::vector<std::size_t> idx = rng.subset(q, k);
    std::vector<Elem> alphas(idx.begin(), idx.end());
    NoSlackInstance inst = build_no_slack_pair(*fp, n, e, k, alphas, CoordinatePolicy::kPermutation,
                                               rng.next());
    bool ok = verify_weight_profile(*fp, inst);
    for (Elem a = 0; a < q; ++a) {
      const bool chosen = std::find(alphas.begin(), alphas.end(), a) != alphas.end();
      ok = ok && weight(vec_axpy(*fp, inst.x1, a, inst.x2)) == (chosen ? e : e + 1);
    }
    s.check(ok, [&] {
      return "q=" + std::to_string(q) + " n=" + std::to_string(n) + " E=" + std::to_string(e) +
             " K=" + std::to_string(k);
    });
  }
}

void planner_audits(const Ctx& ctx, Suite& s) {
  for (std::uint32_t q : {2u, 3u, 4u, 16u, 256u}) {
    Real h = entropy_q(Ratio{q - 1, q}, q);
    s.check(abs(h - 1) < Real("1e-12"), [&] { return "H_q(1-1/q) != 1 at q=" + std::to_string(q); });
  }
  const std::size_t grid = ctx.full() ? 100 : 20;
  for (std::size_t i = 1; i <= grid; ++i) {
    const std::uint32_t q = std::array<std::uint32_t, 5>{2, 3, 5, 16, 1024}[i % 5];
    const Ratio x{i, 2 * (grid + 1)};
    if (x.num * q > x.den * (q - 1)) continue;
    EntropyCheck ec = entropy_bound_check(x, q);
    s.check(ec.identity_ok && ec.h2_bound_ok && ec.eps_bound_ok,
            [&] { return "entropy bound at x=" + x.to_string() + " q=" + std::to_string(q); });
  }
  AuditGrid g;
  if (!ctx.full()) {
    g.rho_steps = 5;
    g.degrees = {1, 2};
  }
  for (PlanKind kind : {PlanKind::kLine, PlanKind::kSpace, PlanKind::kCurve}) {
    for (RadiusMode mode : {RadiusMode::kTwoRadius, RadiusMode::kOneRadius}) {
      AuditReport rep = run_exponent_audit(kind, mode, g);
      s.check(rep.ok() && rep.checked > 0, [&] {
        return plan_kind_name(kind) + "/" + radius_mode_name(mode) + ": " +
               (rep.violations.empty() ? std::to_string(rep.unstable) + " unstable"
                                       : rep.violations.front());
      });
    }
  }
}

void lifting(const Ctx& ctx, Suite& s) {
  const int codes = ctx.full() ? 20 : 2;
  FieldPtr fp = make_field(4);
  for (int c = 0; c < codes; ++c) {
    LinearCode code = sample_code(8, 4, fp, derive_seed(ctx.opt.seed, "lifting", c));
    for (std::size_t eplus : {1u, 2u}) {
      LiftingOptions opt;
      opt.max_dim = 2;
      LiftingReport gap = lifting_test(code, 1, eplus, opt);
      s.check(gap.status == LiftingStatus::kPass, [&] {
        return "gap lifting code " + std::to_string(c) + " E+=" + std::to_string(eplus) + ": " +
               lifting_status_name(gap.status);
      });
      if (eplus == 1) {
        opt.mode = LiftingMode::kCa;
        LiftingReport ca = lifting_test(code, 1, 1, opt);
        s.check(ca.status == LiftingStatus::kPass || ca.status == LiftingStatus::kHypothesisUnmet,
                [&] { return "ca lifting code " + std::to_string(c) + ": " + lifting_status_name(ca.status); });
      }
    }
  }
}

using SuiteFn = void (*)(const Ctx&, Suite&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"field_axioms", field_axioms},
      {"degenerate_lines", degenerate_lines},
      {"line_ball_bound", line_ball_bound},
      {"space_ball_bound", [](const Ctx& c, Suite& s) { multi_ball_bound(c, s, ObjectKind::kSpace); }},
      {"curve_ball_bound", [](const Ctx& c, Suite& s) { multi_ball_bound(c, s, ObjectKind::kCurve); }},
      {"ca_equivalence", ca_equivalence},
      {"distance_membership", distance_membership},
      {"uniform_image", uniform_image},
      {"rank_reduction", rank_reduction},
      {"no_slack_profile", no_slack_profile},
      {"planner_audits", planner_audits},
      {"lifting", lifting},
  };
  return suites;
}

}  // namespace

SelftestLevel parse_selftest_level(const std::string& s) {
  if (s == "quick") return SelftestLevel::kQuick;
  if (s == "full") return SelftestLevel::kFull;
  throw Error(ErrorCode::kConfigError, "selftest level must be quick or full, got '" + s + "'");
}

bool SelftestReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.ok(); });
}

std::vector<std::string> SelftestReport::failed_suites() const {
  std::vector<std::string> out;
  for (const SuiteResult& r : suites)
    if (!r.ok()) out.push_back(r.name);
  return out;
}

const std::vector<std::string>& selftest_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SelftestReport run_selftest(const SelftestOptions& opt) {
  for (const std::string& name : opt.only) {
    const auto& names = selftest_suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error(ErrorCode::kConfigError, "unknown selftest suite '" + name + "'");
  }
  SelftestReport rep;
  rep.level = opt.level;
  const Ctx ctx{opt};
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, fn] : registry()) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), name) == opt.only.end())
      continue;
    SuiteResult res;
    res.name = name;
    Suite suite(res);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(ctx, suite);
    } catch (const std::exception& e) {
      ++res.failures;
      res.messages.push_back(std::string("exception: ") + e.what());
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.suites.push_back(std::move(res));
  }
  rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string selftest_to_text(const SelftestReport& rep) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1);
  for (const SuiteResult& r : rep.suites) {
    os << (r.ok() ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.name << std::right
       << std::setw(10) << r.checks << " checks " << std::setw(6) << r.failures << " failures "
       << std::setw(10) << r.ms << " ms\n";
    for (const std::string& m : r.messages) os << "     " << m << "\n";
  }
  os << (rep.ok() ? "selftest passed" : "selftest FAILED") << " ("
     << (rep.level == SelftestLevel::kFull ? "full" : "quick") << ", " << rep.ms << " ms)\n";
  return os.str();
}

nlohmann::json selftest_to_json(const SelftestReport& rep) {
  nlohmann::json j;
  j["level"] = rep.level == SelftestLevel::kFull ? "full" : "quick";
  j["ok"] = rep.ok();
  j["ms"] = rep.ms;
  j["suites"] = nlohmann::json::array();
  for (const SuiteResult& r : rep.suites)
    j["suites"].push_back({{"name", r.name},
                           {"checks", r.checks},
                           {"failures", r.failures},
                           {"messages", r.messages},
                           {"ms", r.ms}});
  return j;
}

}  // namespace synlab
