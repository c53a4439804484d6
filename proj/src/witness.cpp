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

#include "synlab/witness.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "synlab/rng.hpp"

namespace synlab {

EvaluationDesign EvaluationDesign::restrict_to(
    const std::vector<std::size_t>& idx) const {
  EvaluationDesign out{kind, degree, {}};
  for (std::size_t i : idx) out.points.push_back(points.at(i));
  return out;
}

Matrix design_rows(const Field& f, const EvaluationDesign& design) {
  std::vector<Vec> cols;
  for (const DesignPoint& p : design.points)
    cols.push_back(design_column(f, design.kind, design.degree, p));
  if (cols.empty()) return Matrix(design.degree + 1, 0);
  return Matrix::from_columns(cols, design.degree + 1);
}

bool design_has_full_rank(const Field& f, const EvaluationDesign& design) {
  return rank(f, design_rows(f, design)) == design.degree + 1;
}

WitnessCheck verify_witness(const WitnessMatrix& w, const LinearCode& code) {
  const Field& f = code.field();
  auto fail = [](WitnessFailure kind, std::size_t col, std::string msg) {
    return WitnessCheck{false, kind, col, std::move(msg)};
  };
  if (w.x.rows() != code.n() || w.x.cols() != w.design.size() ||
      w.target.kind != w.design.kind ||
      w.target.degree() != w.design.degree ||
      w.target.length() != code.r()) {
    return fail(WitnessFailure::kShape, 0, "shape mismatch");
  }
  std::set<DesignPoint> seen;
  for (std::size_t j = 0; j < w.design.size(); ++j) {
    if (!seen.insert(w.design.points[j]).second)
      return fail(WitnessFailure::kDuplicatePoint, j, "repeated design point");
  }
  for (std::size_t j = 0; j < w.k(); ++j) {
    Vec col = w.x.col(j);
    if (code.syndrome(col) != evaluate(f, w.target, w.design.points[j])) {
      return fail(WitnessFailure::kSyndrome, j, "syndrome differs from target");
    }
    if (weight(col) > w.e) {
      return fail(WitnessFailure::kWeight, j,
                  "weight " + std::to_string(weight(col)) + " exceeds E");
    }
  }
  return {};
}

namespace {

void require_witness(const WitnessMatrix& w, const LinearCode& code) {
  WitnessCheck chk = verify_witness(w, code);
  if (!chk.ok) {
    throw Error(ErrorCode::kNotAWitness,
                "column " + std::to_string(chk.column) + ": " + chk.message);
  }
}

void require_design(const Field& f, const EvaluationDesign& d) {
  if (!design_has_full_rank(f, d)) {
    throw Error(ErrorCode::kDesignDegenerate,
                "design rows have rank below " + std::to_string(d.degree + 1));
  }
}

WitnessMatrix restrict_witness(const WitnessMatrix& w,
                               const std::vector<std::size_t>& idx) {
  return WitnessMatrix{w.target, w.design.restrict_to(idx),
                       w.x.select_columns(idx), w.e};
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

RowExpansion expand_witness(const WitnessMatrix& w, const LinearCode& code) {
  const Field& f = code.field();
  Matrix y = mat_mul(f, code.parity_check(), w.x);
  RowSpaceBasis rs = row_space_tools(f, w.x, y.row_list());
  RowExpansion out;
  out.base_rows = rs.given_used.size();
  out.basis = Matrix::from_rows(rs.basis, w.k());
  out.coeffs = express_in_row_basis(f, w.x, out.basis);
  return out;
}

ReductionStep reduce_with_expansion(const WitnessMatrix& w,
                                    const LinearCode& code,
                                    const RowExpansion& ex,
                                    std::optional<std::size_t> d) {
  const Field& f = code.field();
  require_witness(w, code);
  if (ex.basis.cols() != w.k() || ex.coeffs.rows() != code.n() ||
      ex.coeffs.cols() != ex.basis.rows() || ex.base_rows > ex.basis.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "row expansion shape");
  }
  if (!(mat_mul(f, ex.coeffs, ex.basis) == w.x)) {
    throw Error(ErrorCode::kNotExpressible, "expansion does not reproduce X");
  }
  Matrix y = mat_mul(f, code.parity_check(), w.x);
  std::vector<Vec> base(ex.basis.row_list());
  base.resize(ex.base_rows);
  const std::size_t ry = rank(f, y);
  std::vector<Vec> joint = y.row_list();
  joint.insert(joint.end(), base.begin(), base.end());
  if (rank_of_vectors(f, base, w.k()) != ry ||
      rank_of_vectors(f, joint, w.k()) != ry) {
    throw Error(ErrorCode::kDomainError,
                "leading basis rows do not span Row(HX)");
  }

  ReductionCertificate cert;
  cert.k_before = w.k();
  cert.rank_before = rank(f, w.x);
  std::optional<std::size_t> chosen;
  std::size_t best_wt = 0;
  for (std::size_t l = ex.base_rows; l < ex.basis.rows(); ++l) {
    Vec c = ex.coeffs.col(l);
    if (!code.contains(c)) {
      throw Error(ErrorCode::kDomainError,
                  "eliminated coefficient " + std::to_string(l) +
                      " is not a codeword");
    }
    if (weight(c) > best_wt) {
      best_wt = weight(c);
      chosen = l;
    }
  }
  if (!chosen) {
    cert.retained.resize(w.k());
    std::iota(cert.retained.begin(), cert.retained.end(), 0);
    cert.rank_after = cert.rank_before;
    return ReductionStep{w, cert};
  }

  Vec c = ex.coeffs.col(*chosen);
  if (d && weight(c) < *d) {
    throw Error(ErrorCode::kDomainError,
                "codeword of weight " + std::to_string(weight(c)) +
                    " below the supplied distance");
  }
  std::size_t best_zeros = 0;
  bool have_pivot = false;
  for (std::size_t i : support(c)) {
    std::size_t zeros = 0;
    for (std::size_t j = 0; j < w.k(); ++j) zeros += w.x.at(i, j) == 0;
    if (!have_pivot || zeros > best_zeros) {
      best_zeros = zeros;
      cert.pivot = i;
      have_pivot = true;
    }
  }
  for (std::size_t j = 0; j < w.k(); ++j)
    if (w.x.at(cert.pivot, j) == 0) cert.retained.push_back(j);

  cert.eliminated = c;
  cert.eliminated_index = *chosen;
  cert.support_size = weight(c);
  const std::size_t s = cert.support_size;
  cert.retained_bound = s > w.e ? ceil_div(w.k() * (s - w.e), s) : 0;
  if (d && *d > w.e) cert.distance_bound = ceil_div(w.k() * (*d - w.e), *d);

  WitnessMatrix out = restrict_witness(w, cert.retained);
  cert.rank_after = rank(f, out.x);
  return ReductionStep{std::move(out), std::move(cert)};
}

ReductionStep reduce_rank_once(const WitnessMatrix& w, const LinearCode& code,
                               std::optional<std::size_t> d) {
  const Field& f = code.field();
  require_witness(w, code);
  require_design(f, w.design);
  const std::size_t h = coefficient_rank(f, w.target);
  const std::size_t t = rank(f, w.x);
  if (t <= h) {
    throw Error(ErrorCode::kRankTooLow, "rank " + std::to_string(t) +
                                            " does not exceed h = " +
                                            std::to_string(h));
  }
  return reduce_with_expansion(w, code, expand_witness(w, code), d);
}

BaseParametrization reduce_to_base(const WitnessMatrix& w,
                                   const LinearCode& code,
                                   std::optional<std::size_t> d) {
  const Field& f = code.field();
  require_witness(w, code);
  require_design(f, w.design);
  const std::size_t h = coefficient_rank(f, w.target);

  BaseParametrization out;
  out.witness = w;
  out.retained.resize(w.k());
  std::iota(out.retained.begin(), out.retained.end(), 0);
  while (rank(f, out.witness.x) > h) {
    ReductionStep step = reduce_rank_once(out.witness, code, d);
    std::vector<std::size_t> mapped;
    for (std::size_t j : step.cert.retained) mapped.push_back(out.retained[j]);
    out.retained = std::move(mapped);
    out.witness = std::move(step.witness);
    out.chain.push_back(std::move(step.cert));
    if (!design_has_full_rank(f, out.witness.design)) {
      throw Error(ErrorCode::kThresholdUnderflow,
                  std::to_string(out.witness.k()) +
                      " retained points no longer determine the design");
    }
  }

  Matrix u = design_rows(f, out.witness.design);
  Matrix a = express_in_row_basis(f, out.witness.x, u);
  out.coeffs = a.col_list();
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    if (code.syndrome(out.coeffs[i]) != w.target.coeffs[i]) {
      throw Error(ErrorCode::kDomainError, "parametrization misses target");
    }
  }
  AffineObject param{w.target.kind, out.coeffs};
  for (std::size_t j = 0; j < out.witness.k(); ++j) {
    if (evaluate(f, param, out.witness.design.points[j]) !=
        out.witness.x.col(j)) {
      throw Error(ErrorCode::kDomainError, "parametrization misses a column");
    }
  }
  return out;
}

std::string threshold_verdict_name(ThresholdVerdict v) {
  switch (v) {
    case ThresholdVerdict::kHolds:
      return "holds";
    case ThresholdVerdict::kNotApplicable:
      return "not_applicable";
    case ThresholdVerdict::kCounterexample:
      return "counterexample";
  }
  return "unknown";
}

ThresholdReport threshold_check(const WitnessMatrix& w, const LinearCode& code,
                                std::size_t eplus, bool hypothesis,
                                std::optional<MinDistance> d) {
  const Field& f = code.field();
  if (!d) {
    auto cached = code.cached_distance();
    if (!cached) {
      throw Error(ErrorCode::kMissingDistance, "minimum distance unknown");
    }
    d = cached->distance;
  }
  require_witness(w, code);
  if (eplus < w.e) throw Error(ErrorCode::kDomainError, "E+ < E");

  ThresholdReport rep;
  rep.d = *d;
  rep.k = w.k();
  rep.t = rank(f, w.x);
  rep.h = coefficient_rank(f, w.target);
  rep.b = line_bound(w.e, eplus);
  const std::size_t deg = w.design.degree;
  switch (w.design.kind) {
    case ObjectKind::kLine:
      rep.factor = 1;
      break;
    case ObjectKind::kSpace:
      rep.factor = sat_pow(f.q(), deg - 1);
      break;
    case ObjectKind::kCurve:
      rep.factor = deg;
      break;
  }

  auto not_applicable = [&](std::string why) {
    rep.verdict = ThresholdVerdict::kNotApplicable;
    rep.reason = std::move(why);
    return rep;
  };
  if (!hypothesis) return not_applicable("hypothesis flag not set");
  if (!d->is_infinite() && eplus >= d->value())
    return not_applicable("E+ >= d");
  if (w.design.kind == ObjectKind::kLine && rep.h != 2)
    return not_applicable("degenerate line");
  if (w.design.kind == ObjectKind::kSpace) {
    std::vector<Vec> dirs(w.target.coeffs.begin() + 1, w.target.coeffs.end());
    if (rank_of_vectors(f, dirs, code.r()) != deg)
      return not_applicable("space directions are dependent");
  }
  if (rep.t < rep.h) return not_applicable("rank below h");

  const std::size_t steps = rep.t - rep.h;
  BigInt dpow = 1, gpow = 1;
  if (!d->is_infinite()) {
    dpow = big_pow(BigInt(d->value()), steps);
    gpow = big_pow(BigInt(d->value() - w.e), steps);
  }
  rep.lhs = BigInt(rep.k) * gpow;
  rep.rhs = BigInt(rep.b) * BigInt(rep.factor) * dpow;
  rep.unfloored_holds = rep.lhs * BigInt(eplus - w.e + 1) <=
                        BigInt(eplus + 1) * BigInt(rep.factor) * dpow;
  if (rep.lhs <= rep.rhs) {
    rep.verdict = ThresholdVerdict::kHolds;
  } else {
    rep.verdict = ThresholdVerdict::kCounterexample;
    rep.reason = rep.unfloored_holds ? "exceeds floored bound only"
                                     : "exceeds bound";
    rep.counterexample = w;
  }
  return rep;
}

namespace {

// Vectors of weight <= e grouped by syndrome; only syndromes with at least
// two preimages are kept, since the rest cannot raise the rank.
std::unordered_map<std::uint64_t, std::vector<Vec>> collide_ball(
    const LinearCode& code, std::size_t e, std::uint64_t cap) {
  const Field& f = code.field();
  const std::uint64_t vol = sat_ball_volume(code.n(), f.q(), e);
  const std::uint64_t cost = sat_mul(vol, code.r() + 1);
  if (cost > cap) throw BudgetExceeded(cost, cap, "witness synthesis");
  VectorCodec codec(f.q(), code.r());
  std::unordered_map<std::uint64_t, std::vector<Vec>> groups;
  const Matrix& h = code.parity_check();
  for_each_support_up_to(code.n(), e, [&](const std::vector<std::size_t>& s) {
    for_each_tuple(s.size(), 1, f.q(), [&](const std::vector<Elem>& vals) {
      Vec x(code.n(), 0);
      Vec syn(code.r(), 0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        x[s[i]] = vals[i];
        for (std::size_t row = 0; row < code.r(); ++row)
          syn[row] = f.add(syn[row], f.mul(h.at(row, s[i]), vals[i]));
      }
      groups[codec.encode(syn)].push_back(std::move(x));
      return true;
    });
    return true;
  });
  for (auto it = groups.begin(); it != groups.end();) {
    if (it->second.size() < 2) {
      it = groups.erase(it);
    } else {
      ++it;
    }
  }
  return groups;
}

struct Column {
  std::size_t point;
  Vec x;
};

std::optional<WitnessMatrix> synth_attempt(
    const LinearCode& code, const SynthRequest& req,
    const std::vector<DesignPoint>& pts,
    const std::unordered_map<std::uint64_t, std::vector<Vec>>& groups,
    Rng& rng) {
  const Field& f = code.field();
  const std::size_t n = code.n();
  const std::size_t dd = req.degree + 1;
  VectorCodec codec(f.q(), code.r());

  // Anchors supported on a random E-set, so every point of the word-space
  // parametrization has weight <= E.
  std::vector<std::size_t> supp = rng.subset(n, std::min(req.e, n));
  std::vector<Vec> anchors;
  for (std::size_t i = 0; i < dd; ++i) {
    Vec v(n, 0);
    for (std::size_t c : supp) v[c] = static_cast<Elem>(rng.below(f.q()));
    anchors.push_back(std::move(v));
  }
  std::vector<Vec> images;
  for (const Vec& v : anchors) images.push_back(code.syndrome(v));
  if (rank_of_vectors(f, images, code.r()) != dd) return std::nullopt;

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<std::size_t> anchor_pts(order.begin(), order.begin() + dd);
  EvaluationDesign anchor_design{req.kind, req.degree, {}};
  for (std::size_t i : anchor_pts) anchor_design.points.push_back(pts[i]);
  if (!design_has_full_rank(f, anchor_design)) return std::nullopt;

  Matrix a = express_in_row_basis(
      f, Matrix::from_columns(anchors, n), design_rows(f, anchor_design));
  AffineObject param{req.kind, a.col_list()};
  AffineObject target = push_forward(code, param);

  std::vector<Column> cols;
  EchelonBasis span(&f, n);
  for (std::size_t i = 0; i < dd; ++i) {
    cols.push_back(Column{anchor_pts[i], anchors[i]});
    span.insert(anchors[i]);
  }
  std::vector<std::size_t> rest(order.begin() + dd, order.end());
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i : anchor_pts) used[i] = true;

  for (std::size_t pi : rest) {
    if (span.dim() >= req.target_rank) break;
    auto it = groups.find(codec.encode(evaluate(f, target, pts[pi])));
    if (it == groups.end()) continue;
    std::vector<Vec> cands = it->second;
    rng.shuffle(cands);
    for (const Vec& c : cands) {
      if (span.insert(c)) {
        cols.push_back(Column{pi, c});
        used[pi] = true;
        break;
      }
    }
  }
  if (span.dim() != req.target_rank) return std::nullopt;

  for (std::size_t pi : rest) {
    if (cols.size() >= req.k) break;
    if (used[pi]) continue;
    std::vector<Vec> cands{evaluate(f, param, pts[pi])};
    auto it = groups.find(codec.encode(evaluate(f, target, pts[pi])));
    if (it != groups.end()) {
      for (const Vec& c : it->second)
        if (c != cands[0] && span.contains(c)) cands.push_back(c);
    }
    cols.push_back(Column{pi, cands[rng.below(cands.size())]});
    used[pi] = true;
  }
  if (cols.size() != req.k) return std::nullopt;

  std::sort(cols.begin(), cols.end(), [](const Column& x, const Column& y) {
    return x.point < y.point;
  });
  WitnessMatrix w;
  w.target = std::move(target);
  w.design = EvaluationDesign{req.kind, req.degree, {}};
  std::vector<Vec> xs;
  for (const Column& c : cols) {
    w.design.points.push_back(pts[c.point]);
    xs.push_back(c.x);
  }
  w.x = Matrix::from_columns(xs, n);
  w.e = req.e;
  return w;
}

}  // namespace

WitnessMatrix synth_witness(const LinearCode& code, const SynthRequest& req) {
  const Field& f = code.field();
  const std::size_t dd = req.degree + 1;
  if (req.kind == ObjectKind::kLine && req.degree != 1) {
    throw Error(ErrorCode::kDomainError, "lines have degree 1");
  }
  auto infeasible = [](const std::string& why) {
    return Error(ErrorCode::kInfeasibleBudget, why);
  };
  if (req.target_rank < dd) throw infeasible("target rank below h");
  if (req.target_rank > dd + code.dimension())
    throw infeasible("more planted codewords than the code dimension");
  if (req.e < dd) throw infeasible("E too small for independent anchors");
  if (req.k < req.target_rank) throw infeasible("K below target rank");
  const std::vector<DesignPoint> pts =
      all_design_points(f, req.kind, req.degree);
  if (req.k > pts.size()) throw infeasible("K exceeds the number of points");

  const auto groups = req.target_rank > dd
                          ? collide_ball(code, req.e, req.cap)
                          : std::unordered_map<std::uint64_t, std::vector<Vec>>{};
  for (std::size_t attempt = 0; attempt < req.retries; ++attempt) {
    Rng rng(derive_seed(req.seed, "synth", attempt));
    auto w = synth_attempt(code, req, pts, groups, rng);
    if (w) return *w;
  }
  throw infeasible("no witness of rank " + std::to_string(req.target_rank) +
                   " after " + std::to_string(req.retries) + " attempts");
}

nlohmann::json witness_to_json(const WitnessMatrix& w) {
  nlohmann::json j;
  j["kind"] = object_kind_name(w.design.kind);
  j["degree"] = w.design.degree;
  j["e"] = w.e;
  j["target"] = w.target.coeffs;
  j["points"] = w.design.points;
  j["columns"] = w.x.col_list();
  return j;
}

nlohmann::json certificate_to_json(const ReductionCertificate& c) {
  nlohmann::json j;
  j["retained"] = c.retained;
  j["already_lower"] = c.already_lower();
  j["eliminated"] = c.eliminated ? nlohmann::json(*c.eliminated) : nlohmann::json();
  j["pivot"] = c.pivot;
  j["rank_before"] = c.rank_before;
  j["rank_after"] = c.rank_after;
  j["k_before"] = c.k_before;
  j["support_size"] = c.support_size;
  j["retained_bound"] = c.retained_bound;
  j["distance_bound"] =
      c.distance_bound ? nlohmann::json(*c.distance_bound) : nlohmann::json();
  return j;
}

}  // namespace synlab
