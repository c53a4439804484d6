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

#include "synlab/agreement.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace synlab {

using u128 = unsigned __int128;

std::string Ratio::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

bool ratio_greater(std::uint64_t a, std::uint64_t b, const Ratio& r) {
  return static_cast<u128>(a) * r.den > static_cast<u128>(r.num) * b;
}

bool operator<(const Ratio& a, const Ratio& b) {
  return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
}

bool operator==(const Ratio& a, const Ratio& b) {
  return static_cast<u128>(a.num) * b.den == static_cast<u128>(b.num) * a.den;
}

Ratio parse_ratio(const std::string& text) {
  auto bad = [&] {
    return Error(ErrorCode::kConfigError, "not a ratio: '" + text + "'");
  };
  auto digits = [&](const std::string& s) {
    if (s.empty() || s.size() > 18 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw bad();
    return std::stoull(s);
  };
  Ratio r;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    r.num = digits(text.substr(0, slash));
    r.den = digits(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    r.num = digits(whole + frac);
    r.den = sat_pow(10, frac.size());
  } else {
    r.num = digits(text);
  }
  if (r.den == 0) throw bad();
  std::uint64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

CAResult ca_decide(const LinearCode& code, const std::vector<Vec>& targets,
                   std::size_t eplus, std::uint64_t cap) {
  const Field& f = code.field();
  const std::size_t n = code.n(), r = code.r();
  if (targets.empty()) throw Error(ErrorCode::kDomainError, "no targets");
  for (const Vec& s : targets)
    if (s.size() != r) throw Error(ErrorCode::kDimensionMismatch, "target length");
  const std::size_t top = std::min(eplus, n);
  const std::uint64_t cost = sat_mul(sat_support_count(n, top), r + 1);
  if (cost > cap) throw BudgetExceeded(cost, cap, "ca_decide");

  CAResult res;
  const std::size_t tr = rank_of_vectors(f, targets, r);
  const Matrix& h = code.parity_check();
  std::vector<Vec> hcols = h.col_list();
  {
    EchelonBasis all(&f, r);
    for (const Vec& c : hcols) all.insert(c);
    for (const Vec& s : targets)
      if (!all.contains(s)) return res;
  }
  std::optional<std::vector<std::size_t>> found;
  for (std::size_t w = tr; w <= top && !found; ++w) {
    for_each_subset(n, w, [&](const std::vector<std::size_t>& t) {
      EchelonBasis b(&f, r);
      for (std::size_t j : t) b.insert(hcols[j]);
      for (const Vec& s : targets)
        if (!b.contains(s)) return true;
      found = t;
      return false;
    });
  }
  if (!found) return res;

  Matrix ht = h.select_columns(*found);
  Matrix x(n, targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::optional<Vec> sol = solve_linear(f, ht, targets[i]);
    for (std::size_t k = 0; k < found->size(); ++k) x.at((*found)[k], i) = (*sol)[k];
  }
  res.decision = true;
  res.x = std::move(x);
  res.support = std::move(found);
  return res;
}

bool ca_witness_valid(const LinearCode& code, const std::vector<Vec>& targets,
                      std::size_t eplus, const CAResult& res) {
  if (!res.decision || !res.x) return false;
  const Matrix& x = *res.x;
  if (x.rows() != code.n() || x.cols() != targets.size()) return false;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (code.syndrome(x.col(i)) != targets[i]) return false;
  return row_weight(x) <= eplus;
}

CrossCheck reformulation_crosscheck(const LinearCode& code,
                                    const AffineObject& word_object,
                                    std::size_t eplus, std::uint64_t cap) {
  const Field& f = code.field();
  const std::size_t n = code.n();
  const std::size_t parts = word_object.coeffs.size();
  const std::uint64_t per = sat_pow(f.q(), code.dimension());
  const std::uint64_t cost = sat_mul(sat_pow(per, parts), n);
  if (cost > cap) throw BudgetExceeded(cost, cap, "codeword tuple search");

  std::vector<Vec> words;
  for_each_codeword(code, [&](const Vec& c) {
    words.push_back(c);
    return true;
  });

  CrossCheck out;
  std::size_t best = n + 1;
  std::vector<bool> mask(n, false);
  // Depth-first over tuples, pruning once the joint support reaches best.
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t j,
                                                          std::size_t size) {
    if (size >= best) return;
    if (j == parts) {
      best = size;
      return;
    }
    for (const Vec& c : words) {
      std::vector<std::size_t> added;
      for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i] && word_object.coeffs[j][i] != c[i]) {
          mask[i] = true;
          added.push_back(i);
        }
      }
      dfs(j + 1, size + added.size());
      for (std::size_t i : added) mask[i] = false;
    }
  };
  dfs(0, 0);
  out.best_union = best;
  out.word_side = best <= eplus;

  std::vector<Vec> targets;
  for (const Vec& u : word_object.coeffs) targets.push_back(code.syndrome(u));
  out.syndrome_side = ca_decide(code, targets, eplus, cap).decision;
  return out;
}

GapReport gap_check_object(const Field& f, const AffineObject& obj,
                           const SyndromeSet& ball_e,
                           const SyndromeSet& ball_eplus, std::uint64_t cap) {
  GapReport g;
  g.kind = obj.kind;
  const std::size_t r = obj.length();
  std::vector<Vec> dirs(obj.coeffs.begin() + 1, obj.coeffs.end());
  g.dim = rank_of_vectors(f, dirs, r);
  const std::size_t params = obj.kind == ObjectKind::kSpace ? obj.degree() : 1;
  const std::uint64_t evals = sat_pow(f.q(), params);
  if (evals > cap) throw BudgetExceeded(evals, cap, "object evaluation");
  VectorCodec codec(f.q(), r);
  std::unordered_set<std::uint64_t> seen;
  g.contained = true;
  for (const DesignPoint& p : all_design_points(f, obj.kind, obj.degree())) {
    Vec s = evaluate(f, obj, p);
    const bool in = ball_e.contains(s);
    g.eval_count += in;
    ++g.eval_total;
    g.contained = g.contained && ball_eplus.contains(s);
    if (seen.insert(codec.encode(s)).second) g.set_count += in;
  }
  g.set_size = seen.size();
  return g;
}

GapReport gap_check_line(const Field& f, const SyndromeLine& line,
                         const SyndromeSet& ball_e,
                         const SyndromeSet& ball_eplus) {
  return gap_check_object(f, make_line(line.s0, line.s1), ball_e, ball_eplus);
}

std::size_t max_list_size(const LinearCode& code, std::size_t e,
                          std::uint64_t cap) {
  const Field& f = code.field();
  const std::uint64_t cost =
      sat_mul(sat_ball_volume(code.n(), f.q(), e), code.r() + 1);
  if (cost > cap) throw BudgetExceeded(cost, cap, "list size");
  VectorCodec codec(f.q(), code.r());
  std::unordered_map<std::uint64_t, std::size_t> counts;
  std::size_t best = 0;
  const Matrix& h = code.parity_check();
  for_each_support_up_to(code.n(), e, [&](const std::vector<std::size_t>& s) {
    for_each_tuple(s.size(), 1, f.q(), [&](const std::vector<Elem>& vals) {
      Vec syn(code.r(), 0);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t row = 0; row < code.r(); ++row)
          syn[row] = f.add(syn[row], f.mul(h.at(row, s[i]), vals[i]));
      best = std::max(best, ++counts[codec.encode(syn)]);
      return true;
    });
    return true;
  });
  return best;
}

std::string lifting_status_name(LiftingStatus s) {
  switch (s) {
    case LiftingStatus::kPass:
      return "pass";
    case LiftingStatus::kSpaceViolation:
      return "space_violation";
    case LiftingStatus::kAntecedentFailed:
      return "antecedent_failed";
    case LiftingStatus::kHypothesisUnmet:
      return "hypothesis_unmet";
  }
  return "unknown";
}

LiftingReport lifting_test(const LinearCode& code, std::size_t e,
                           std::size_t eplus, const LiftingOptions& opt) {
  const Field& f = code.field();
  const std::uint32_t q = f.q();
  if (e > eplus) throw Error(ErrorCode::kDomainError, "E > E+");
  if (opt.mode == LiftingMode::kCa && e != eplus) {
    throw Error(ErrorCode::kDomainError, "correlated-agreement lifting needs E+ = E");
  }
  LiftingReport rep;
  const std::vector<SyndromeSet> balls = enumerate_balls_up_to(code, eplus, opt.cap);
  const std::vector<SyndromeLine> lines =
      enumerate_syndrome_lines(f, code.r(), nullptr, opt.cap);
  rep.lines_checked = lines.size();

  // tau* = max count/q over lines that break the line-level conclusion.
  std::uint64_t worst = 0;
  for (const SyndromeLine& l : lines) {
    if (opt.mode == LiftingMode::kGap) {
      GapReport g = gap_check_line(f, l, balls[e], balls[eplus]);
      if (!g.contained && g.eval_count > worst) {
        worst = g.eval_count;
        rep.failing_line = l;
      }
    } else {
      for (std::size_t ep = 0; ep <= e; ++ep) {
        GapReport g = gap_check_line(f, l, balls[ep], balls[ep]);
        if (g.eval_count <= worst) continue;
        if (!ca_decide(code, {l.s0, l.s1}, ep, opt.cap).decision) {
          worst = g.eval_count;
          rep.failing_line = l;
        }
      }
    }
  }
  rep.tau_star = Ratio{worst, q};
  rep.tau = opt.tau ? *opt.tau : rep.tau_star;
  if (rep.tau < rep.tau_star) {
    rep.status = LiftingStatus::kAntecedentFailed;
    return rep;
  }
  rep.failing_line.reset();

  if (opt.mode == LiftingMode::kCa) {
    rep.max_list_size = max_list_size(code, e, opt.cap);
    if (rep.max_list_size >= q) {
      rep.status = LiftingStatus::kHypothesisUnmet;
      return rep;
    }
  }

  rep.space_threshold = Ratio{rep.tau.num * q, rep.tau.den * (q - 1)};
  for (std::size_t dim = 1; dim <= opt.max_dim && dim <= code.r(); ++dim) {
    for (const Flat& fl : enumerate_flats(f, code.r(), dim, opt.cap)) {
      ++rep.flats_checked;
      std::uint64_t in = 0;
      bool contained = true;
      for_each_tuple(dim, 0, q, [&](const std::vector<Elem>& co) {
        Vec p = fl.base;
        for (std::size_t i = 0; i < dim; ++i) p = vec_axpy(f, p, co[i], fl.dirs[i]);
        in += balls[e].contains(p);
        contained = contained && balls[eplus].contains(p);
        return true;
      });
      if (!ratio_greater(in, sat_pow(q, dim), rep.space_threshold)) continue;
      ++rep.flats_above_threshold;
      bool ok = contained;
      if (opt.mode == LiftingMode::kCa) {
        std::vector<Vec> targets{fl.base};
        targets.insert(targets.end(), fl.dirs.begin(), fl.dirs.end());
        ok = ca_decide(code, targets, e, opt.cap).decision;
      }
      if (!ok) rep.violations.push_back(fl);
    }
  }
  if (!rep.violations.empty()) rep.status = LiftingStatus::kSpaceViolation;
  return rep;
}

}  // namespace synlab
