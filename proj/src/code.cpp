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

#include "synlab/code.hpp"

#include <cmath>

#include "synlab/rng.hpp"

namespace synlab {

std::size_t MinDistance::value() const {
  if (!value_) {
    throw Error(ErrorCode::kDomainError, "distance of the zero code");
  }
  return *value_;
}

LinearCode::LinearCode(FieldPtr field, Matrix h)
    : field_(std::move(field)),
      h_(std::move(h)),
      cache_(std::make_shared<Cache>()) {
  rank_h_ = rank(*field_, h_);
  kernel_ = kernel_basis(*field_, h_);
}

std::optional<DistanceResult> LinearCode::cached_distance() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->distance;
}

void LinearCode::store_distance(const DistanceResult& d) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->distance) cache_->distance = d;
}

LinearCode sample_code(std::size_t n, std::size_t r, FieldPtr field,
                       std::uint64_t seed) {
  Rng rng(derive_seed(seed, "parity-check", 0));
  Matrix h(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h.at(i, j) = static_cast<Elem>(rng.below(field->q()));
  return LinearCode(std::move(field), std::move(h));
}

void for_each_codeword(const LinearCode& code,
                       const std::function<bool(const Vec&)>& fn) {
  const Field& f = code.field();
  const auto& basis = code.kernel();
  const std::size_t n = code.n();
  for_each_tuple(basis.size(), 0, f.q(), [&](const std::vector<Elem>& coef) {
    Vec c(n, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (coef[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        c[j] = f.add(c[j], f.mul(coef[i], basis[i][j]));
    }
    return fn(c);
  });
}

namespace {

DistanceResult distance_by_enumeration(const LinearCode& code) {
  DistanceResult res;
  std::size_t best = code.n() + 1;
  for_each_codeword(code, [&](const Vec& c) {
    std::size_t w = weight(c);
    if (w > 0 && (w < best || (w == best && lex_less(c, *res.witness)))) {
      best = w;
      res.witness = c;
    }
    return true;
  });
  if (res.witness) res.distance = MinDistance::finite(best);
  return res;
}

DistanceResult distance_by_supports(const LinearCode& code) {
  const Field& f = code.field();
  const Matrix& h = code.parity_check();
  DistanceResult res;
  for (std::size_t w = 1; w <= code.n() && !res.witness; ++w) {
    for_each_subset(code.n(), w, [&](const std::vector<std::size_t>& t) {
      Matrix ht = h.select_columns(t);
      std::vector<Vec> ker = kernel_basis(f, ht);
      if (ker.empty()) return true;
      Vec c(code.n(), 0);
      Vec z = ker.front();
      Elem inv = f.inv(z[support(z).front()]);
      for (std::size_t i = 0; i < t.size(); ++i) c[t[i]] = f.mul(inv, z[i]);
      res.witness = c;
      res.distance = MinDistance::finite(w);
      return false;
    });
  }
  return res;
}

}  // namespace

DistanceResult min_distance(const LinearCode& code, std::uint64_t cap,
                            DistanceStrategy strategy) {
  if (strategy == DistanceStrategy::kAuto) {
    if (auto cached = code.cached_distance()) return *cached;
  }
  if (code.dimension() == 0) {
    DistanceResult res;
    if (strategy == DistanceStrategy::kAuto) code.store_distance(res);
    return res;
  }
  const std::uint64_t enum_cost = sat_pow(code.field().q(), code.dimension());
  const std::uint64_t support_cost =
      sat_support_count(code.n(), code.rank_h() + 1);
  DistanceStrategy chosen = strategy;
  if (chosen == DistanceStrategy::kAuto) {
    chosen = enum_cost <= support_cost ? DistanceStrategy::kCodewordEnumeration
                                       : DistanceStrategy::kSupportSearch;
  }
  const std::uint64_t cost =
      chosen == DistanceStrategy::kCodewordEnumeration ? enum_cost
                                                       : support_cost;
  if (cost > cap) throw BudgetExceeded(cost, cap, "min_distance");
  DistanceResult res = chosen == DistanceStrategy::kCodewordEnumeration
                           ? distance_by_enumeration(code)
                           : distance_by_supports(code);
  if (strategy == DistanceStrategy::kAuto) code.store_distance(res);
  return res;
}

NearestCodeword distance_to_code(const LinearCode& code, const Vec& y,
                                 std::uint64_t cap) {
  const Field& f = code.field();
  if (y.size() != code.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "word length");
  }
  const std::uint64_t enum_cost = sat_pow(f.q(), code.dimension());
  const std::uint64_t radius_cost = sat_support_count(code.n(), code.rank_h());
  NearestCodeword best;
  best.distance = code.n() + 1;

  if (enum_cost <= radius_cost) {
    if (enum_cost > cap) throw BudgetExceeded(enum_cost, cap, "distance");
    for_each_codeword(code, [&](const Vec& c) {
      std::size_t d = weight(vec_sub(f, y, c));
      if (d < best.distance ||
          (d == best.distance && lex_less(c, best.codeword))) {
        best.distance = d;
        best.codeword = c;
      }
      return true;
    });
    return best;
  }
  if (radius_cost > cap) throw BudgetExceeded(radius_cost, cap, "distance");

  // Grow the error weight until the syndrome is reached, then collect every
  // codeword at that distance and keep the smallest.
  const Vec s = code.syndrome(y);
  const Matrix& h = code.parity_check();
  for (std::size_t w = 0; w <= code.n(); ++w) {
    bool found = false;
    for_each_subset(code.n(), w, [&](const std::vector<std::size_t>& t) {
      Matrix ht = h.select_columns(t);
      std::optional<Vec> z0 = solve_linear(f, ht, s);
      if (!z0) return true;
      std::vector<Vec> ker = kernel_basis(f, ht);
      for_each_tuple(ker.size(), 0, f.q(), [&](const std::vector<Elem>& co) {
        Vec z = *z0;
        for (std::size_t i = 0; i < ker.size(); ++i)
          z = vec_axpy(f, z, co[i], ker[i]);
        if (weight(z) != w) return true;
        Vec c = y;
        for (std::size_t i = 0; i < t.size(); ++i)
          c[t[i]] = f.sub(c[t[i]], z[i]);
        if (!found || lex_less(c, best.codeword)) best.codeword = c;
        found = true;
        return true;
      });
      return true;
    });
    if (found) {
      best.distance = w;
      return best;
    }
  }
  throw Error(ErrorCode::kDomainError, "syndrome outside column space");
}

std::uint64_t count_codewords_in_ball(const LinearCode& code, const Vec& y,
                                      std::size_t radius, std::uint64_t cap) {
  const Field& f = code.field();
  const std::uint64_t enum_cost = sat_pow(f.q(), code.dimension());
  const std::uint64_t ball_cost = sat_ball_volume(code.n(), f.q(), radius);
  std::uint64_t count = 0;
  if (enum_cost <= ball_cost) {
    if (enum_cost > cap) throw BudgetExceeded(enum_cost, cap, "count");
    for_each_codeword(code, [&](const Vec& c) {
      if (weight(vec_sub(f, y, c)) <= radius) ++count;
      return true;
    });
    return count;
  }
  if (ball_cost > cap) throw BudgetExceeded(ball_cost, cap, "count");
  // Codewords within the radius correspond to errors e with He = Hy.
  const Vec s = code.syndrome(y);
  const Matrix& h = code.parity_check();
  for_each_support_up_to(
      code.n(), radius, [&](const std::vector<std::size_t>& t) {
        for_each_tuple(t.size(), 1, f.q(), [&](const std::vector<Elem>& v) {
          Vec acc(code.r(), 0);
          for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t row = 0; row < code.r(); ++row)
              acc[row] = f.add(acc[row], f.mul(h.at(row, t[i]), v[i]));
          if (acc == s) ++count;
          return true;
        });
        return true;
      });
  return count;
}

UniformImageTable uniform_image_test(const Field& f, const Matrix& x,
                                     std::size_t r, std::uint64_t samples,
                                     std::uint64_t seed) {
  const std::size_t n = x.rows();
  const std::size_t t = x.cols();
  if (rank(f, x) != t) {
    throw Error(ErrorCode::kDomainError, "X must have full column rank");
  }
  const std::uint64_t cells = sat_pow(f.q(), r * t);
  if (cells > 10'000) {
    throw Error(ErrorCode::kTableTooLarge,
                "q^(rt) = " + std::to_string(cells) + " exceeds 10^4");
  }
  UniformImageTable tab;
  tab.cells = static_cast<std::size_t>(cells);
  tab.samples = samples;
  tab.counts.assign(tab.cells, 0);
  Rng rng(derive_seed(seed, "uniform-image", 0));
  Matrix h(r, n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j)
        h.at(i, j) = static_cast<Elem>(rng.below(f.q()));
    Matrix y = mat_mul(f, h, x);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < t; ++j) idx = idx * f.q() + y.at(i, j);
    ++tab.counts[idx];
  }
  const double expected = static_cast<double>(samples) / tab.cells;
  const double sd = std::sqrt(expected * (1.0 - 1.0 / tab.cells));
  for (std::uint64_t c : tab.counts) {
    double dev = static_cast<double>(c) - expected;
    tab.chi_square += dev * dev / expected;
    if (sd > 0) tab.max_sigma = std::max(tab.max_sigma, std::abs(dev) / sd);
  }
  return tab;
}

}  // namespace synlab
