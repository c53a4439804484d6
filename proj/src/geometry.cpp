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

#include "synlab/geometry.hpp"

#include <algorithm>
#include <set>

namespace synlab {

std::string object_kind_name(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::kLine:
      return "line";
    case ObjectKind::kSpace:
      return "space";
    case ObjectKind::kCurve:
      return "curve";
  }
  return "unknown";
}

AffineObject make_line(Vec a, Vec b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "line");
  return AffineObject{ObjectKind::kLine, {std::move(a), std::move(b)}};
}

AffineObject make_space(Vec u0, std::vector<Vec> dirs) {
  AffineObject obj{ObjectKind::kSpace, {std::move(u0)}};
  for (auto& d : dirs) {
    if (d.size() != obj.coeffs[0].size())
      throw Error(ErrorCode::kDimensionMismatch, "space direction");
    obj.coeffs.push_back(std::move(d));
  }
  return obj;
}

AffineObject make_curve(std::vector<Vec> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::kDomainError, "empty curve");
  for (const auto& c : coeffs)
    if (c.size() != coeffs[0].size())
      throw Error(ErrorCode::kDimensionMismatch, "curve coefficient");
  return AffineObject{ObjectKind::kCurve, std::move(coeffs)};
}

Vec design_column(const Field& f, ObjectKind kind, std::size_t degree,
                  const DesignPoint& point) {
  Vec col(degree + 1, 0);
  col[0] = 1;
  switch (kind) {
    case ObjectKind::kLine:
      col[1] = point.at(0);
      break;
    case ObjectKind::kSpace:
      if (point.size() != degree)
        throw Error(ErrorCode::kDimensionMismatch, "space point");
      for (std::size_t i = 0; i < degree; ++i) col[i + 1] = point[i];
      break;
    case ObjectKind::kCurve:
      for (std::size_t i = 1; i <= degree; ++i)
        col[i] = f.mul(col[i - 1], point.at(0));
      break;
  }
  return col;
}

Vec evaluate(const Field& f, const AffineObject& obj, const DesignPoint& point) {
  Vec mult = design_column(f, obj.kind, obj.degree(), point);
  Vec out(obj.length(), 0);
  for (std::size_t i = 0; i < obj.coeffs.size(); ++i)
    if (mult[i] != 0) out = vec_axpy(f, out, mult[i], obj.coeffs[i]);
  return out;
}

std::vector<DesignPoint> all_design_points(const Field& f, ObjectKind kind,
                                           std::size_t degree) {
  std::vector<DesignPoint> pts;
  const std::size_t dim = kind == ObjectKind::kSpace ? degree : 1;
  for_each_tuple(dim, 0, f.q(), [&](const std::vector<Elem>& t) {
    pts.push_back(t);
    return true;
  });
  return pts;
}

std::size_t coefficient_rank(const Field& f, const AffineObject& obj) {
  return rank_of_vectors(f, obj.coeffs, obj.length());
}

AffineObject push_forward(const LinearCode& code, const AffineObject& obj) {
  AffineObject out{obj.kind, {}};
  for (const Vec& u : obj.coeffs) out.coeffs.push_back(code.syndrome(u));
  return out;
}

LineClassification classify_line(const Field& f, const SyndromeLine& line,
                                 const SyndromeSet& ball) {
  LineClassification c;
  c.dim = rank_of_vectors(f, {line.s0, line.s1}, line.s0.size());
  c.degenerate = c.dim <= 1;
  for (Elem a = 0; a < f.q(); ++a) {
    if (ball.contains(vec_axpy(f, line.s0, a, line.s1))) ++c.count;
  }
  if (c.count == 0) {
    c.count_class = LineCountClass::kZero;
  } else if (c.count == 1) {
    c.count_class = LineCountClass::kOne;
  } else if (c.count == f.q()) {
    c.count_class = LineCountClass::kAll;
  }
  return c;
}

std::size_t line_bound(std::size_t e, std::size_t eplus) {
  if (e > eplus) throw Error(ErrorCode::kDomainError, "E > E+");
  return (eplus + 1) / (eplus - e + 1);
}

LineBallCount line_ball_count(const Field& f, const Vec& a, const Vec& b,
                              std::size_t e, std::size_t eplus) {
  if (is_zero(b)) {
    throw Error(ErrorCode::kDegenerateDirection, "line direction is zero");
  }
  LineBallCount out;
  out.bound = line_bound(e, eplus);
  out.contained = true;
  for (Elem alpha = 0; alpha < f.q(); ++alpha) {
    std::size_t w = weight(vec_axpy(f, a, alpha, b));
    if (w <= e) ++out.count;
    if (w > eplus) out.contained = false;
  }
  return out;
}

std::vector<std::size_t> weight_profile(const Field& f,
                                        const AffineObject& obj) {
  std::vector<std::size_t> prof;
  const std::size_t n = obj.length();
  const std::size_t deg = obj.degree();
  Vec mult;
  for (const DesignPoint& p : all_design_points(f, obj.kind, deg)) {
    mult = design_column(f, obj.kind, deg, p);
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Elem v = 0;
      for (std::size_t i = 0; i <= deg; ++i)
        v = f.add(v, f.mul(mult[i], obj.coeffs[i][j]));
      w += v != 0;
    }
    prof.push_back(w);
  }
  return prof;
}

namespace {

std::size_t coefficient_row_weight(const AffineObject& obj) {
  std::size_t w = 0;
  for (std::size_t j = 0; j < obj.length(); ++j) {
    for (const Vec& u : obj.coeffs) {
      if (u[j] != 0) {
        ++w;
        break;
      }
    }
  }
  return w;
}

}  // namespace

SpaceBallCount space_ball_count_from_profile(
    const std::vector<std::size_t>& profile, std::size_t supp_size,
    std::uint32_t q, std::size_t m, std::size_t e, std::size_t eplus) {
  SpaceBallCount out;
  out.supp_size = supp_size;
  for (std::size_t w : profile) out.count += w <= e;
  if (e > eplus) throw Error(ErrorCode::kDomainError, "E > E+");
  out.bound_num = sat_mul(eplus + 1, sat_pow(q, m == 0 ? 0 : m - 1));
  out.bound_den = eplus - e + 1;
  out.bound = out.bound_num / out.bound_den;
  out.applies = supp_size > eplus;
  return out;
}

SpaceBallCount space_ball_count(const Field& f, const AffineObject& space,
                                std::size_t e, std::size_t eplus,
                                std::uint64_t cap) {
  if (space.kind != ObjectKind::kSpace || space.degree() == 0) {
    throw Error(ErrorCode::kDomainError, "expected an m-space with m >= 1");
  }
  const std::uint64_t cost = sat_mul(sat_pow(f.q(), space.degree()),
                                     space.length() + 1);
  if (cost > cap) throw BudgetExceeded(cost, cap, "space_ball_count");
  return space_ball_count_from_profile(weight_profile(f, space),
                                       coefficient_row_weight(space), f.q(),
                                       space.degree(), e, eplus);
}

CurveBallCount curve_ball_count_from_profile(
    const std::vector<std::size_t>& profile, std::size_t row_wt,
    std::size_t ell, std::size_t e, std::size_t eplus) {
  if (e > eplus) throw Error(ErrorCode::kDomainError, "E > E+");
  CurveBallCount out;
  out.row_weight = row_wt;
  for (std::size_t w : profile) out.count += w <= e;
  out.bound_num = ell * (eplus + 1);
  out.bound_den = eplus - e + 1;
  out.applies = row_wt > eplus;
  return out;
}

CurveBallCount curve_ball_count(const Field& f, const AffineObject& curve,
                                std::size_t e, std::size_t eplus) {
  if (curve.kind != ObjectKind::kCurve) {
    throw Error(ErrorCode::kDomainError, "expected a curve");
  }
  return curve_ball_count_from_profile(weight_profile(f, curve),
                                       coefficient_row_weight(curve),
                                       curve.degree(), e, eplus);
}

std::uint64_t syndrome_line_count(std::uint32_t q, std::size_t r) {
  std::uint64_t qr = sat_pow(q, r);
  return sat_mul(qr, qr - 1) / (static_cast<std::uint64_t>(q) * (q - 1));
}

namespace {

// Nonzero vectors whose first nonzero entry is 1, in lexicographic order.
std::vector<Vec> normalized_directions(const VectorCodec& codec) {
  std::vector<Vec> dirs;
  for (std::uint64_t k = 1; k < codec.space_size(); ++k) {
    Vec v = codec.decode(k);
    std::size_t i = 0;
    while (v[i] == 0) ++i;
    if (v[i] == 1) dirs.push_back(std::move(v));
  }
  return dirs;
}

Vec normalize(const Field& f, const Vec& d) {
  std::size_t i = 0;
  while (i < d.size() && d[i] == 0) ++i;
  if (i == d.size()) return d;
  return vec_scale(f, f.inv(d[i]), d);
}

}  // namespace

std::vector<SyndromeLine> enumerate_syndrome_lines(
    const Field& f, std::size_t r, const std::vector<Vec>* filter,
    std::uint64_t cap) {
  VectorCodec codec(f.q(), r);
  std::vector<SyndromeLine> out;
  if (filter != nullptr) {
    const std::uint64_t pairs =
        sat_mul(filter->size(), filter->size() > 0 ? filter->size() - 1 : 0) / 2;
    const std::uint64_t cost = sat_mul(pairs, f.q());
    if (cost > cap) throw BudgetExceeded(cost, cap, "filtered line enumeration");
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (std::size_t i = 0; i < filter->size(); ++i) {
      for (std::size_t j = i + 1; j < filter->size(); ++j) {
        Vec d = vec_sub(f, (*filter)[j], (*filter)[i]);
        if (is_zero(d)) continue;
        d = normalize(f, d);
        std::uint64_t base = kSaturated;
        for (Elem a = 0; a < f.q(); ++a)
          base = std::min(base, codec.encode(vec_axpy(f, (*filter)[i], a, d)));
        seen.emplace(base, codec.encode(d));
      }
    }
    for (const auto& [b, d] : seen)
      out.push_back(SyndromeLine{codec.decode(b), codec.decode(d)});
    return out;
  }

  const std::uint64_t cost = sat_mul(syndrome_line_count(f.q(), r), f.q());
  if (cost > cap) throw BudgetExceeded(cost, cap, "full line enumeration");
  const std::vector<Vec> dirs = normalized_directions(codec);
  for (std::uint64_t pk = 0; pk < codec.space_size(); ++pk) {
    Vec p = codec.decode(pk);
    for (const Vec& d : dirs) {
      bool is_min = true;
      for (Elem a = 1; a < f.q() && is_min; ++a)
        is_min = codec.encode(vec_axpy(f, p, a, d)) > pk;
      if (is_min) out.push_back(SyndromeLine{p, d});
    }
  }
  return out;
}

std::vector<Flat> enumerate_flats(const Field& f, std::size_t r,
                                  std::size_t dim, std::uint64_t cap) {
  VectorCodec codec(f.q(), r);
  std::vector<Flat> out;
  if (dim > r) return out;
  // Reduced echelon bases, one per subspace.
  std::vector<std::vector<Vec>> subspaces;
  for_each_subset(r, dim, [&](const std::vector<std::size_t>& piv) {
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t c = piv[i] + 1; c < r; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          free_slots.emplace_back(i, c);
    for_each_tuple(free_slots.size(), 0, f.q(),
                   [&](const std::vector<Elem>& vals) {
                     std::vector<Vec> basis(dim, Vec(r, 0));
                     for (std::size_t i = 0; i < dim; ++i) basis[i][piv[i]] = 1;
                     for (std::size_t s = 0; s < free_slots.size(); ++s)
                       basis[free_slots[s].first][free_slots[s].second] = vals[s];
                     subspaces.push_back(std::move(basis));
                     return true;
                   });
    return true;
  });
  const std::uint64_t cost = sat_mul(subspaces.size(), codec.space_size());
  if (cost > cap) throw BudgetExceeded(cost, cap, "flat enumeration");
  std::vector<Vec> span_pts;
  for (const auto& basis : subspaces) {
    span_pts.clear();
    for_each_tuple(dim, 0, f.q(), [&](const std::vector<Elem>& co) {
      Vec v(r, 0);
      for (std::size_t i = 0; i < dim; ++i) v = vec_axpy(f, v, co[i], basis[i]);
      span_pts.push_back(std::move(v));
      return true;
    });
    std::vector<bool> covered(codec.space_size(), false);
    for (std::uint64_t pk = 0; pk < codec.space_size(); ++pk) {
      if (covered[pk]) continue;
      Vec p = codec.decode(pk);
      for (const Vec& s : span_pts) covered[codec.encode(vec_add(f, p, s))] = true;
      out.push_back(Flat{std::move(p), basis});
    }
  }
  std::sort(out.begin(), out.end(), [&](const Flat& a, const Flat& b) {
    if (a.base != b.base) return lex_less(a.base, b.base);
    return std::lexicographical_compare(a.dirs.begin(), a.dirs.end(),
                                        b.dirs.begin(), b.dirs.end(), lex_less);
  });
  return out;
}

}  // namespace synlab
