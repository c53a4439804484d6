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

#include "synlab/ball.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

namespace synlab {

VectorCodec::VectorCodec(std::uint32_t q, std::size_t len) : q_(q), len_(len) {
  size_ = sat_pow(q, len);
  if (size_ == kSaturated) {
    throw Error(ErrorCode::kTableTooLarge,
                "q^len does not fit a 64-bit key (q=" + std::to_string(q) +
                    ", len=" + std::to_string(len) + ")");
  }
}

std::uint64_t VectorCodec::encode(const Vec& v) const {
  if (v.size() != len_) {
    throw Error(ErrorCode::kDimensionMismatch, "syndrome length");
  }
  std::uint64_t key = 0;
  for (Elem e : v) key = key * q_ + e;
  return key;
}

Vec VectorCodec::decode(std::uint64_t key) const {
  Vec v(len_, 0);
  for (std::size_t i = len_; i > 0; --i) {
    v[i - 1] = static_cast<Elem>(key % q_);
    key /= q_;
  }
  return v;
}

const Vec* SyndromeSet::preimage(const Vec& s) const {
  auto it = members_.find(codec_.encode(s));
  return it == members_.end() ? nullptr : &it->second;
}

bool SyndromeSet::insert(const Vec& s, const Vec& x) {
  return insert_key(codec_.encode(s), x);
}

bool SyndromeSet::insert_key(std::uint64_t key, const Vec& x) {
  return members_.emplace(key, x).second;
}

std::vector<std::uint64_t> SyndromeSet::sorted_keys() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(members_.size());
  for (const auto& kv : members_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  return keys;
}

namespace {

// Visits every vector of weight exactly w in canonical order with its
// syndrome key. fn(key, x) returns false to stop.
template <typename Fn>
bool for_each_weight_w(const LinearCode& code, const VectorCodec& codec,
                       std::size_t w, Fn&& fn) {
  const Field& f = code.field();
  const std::size_t r = code.r();
  const std::vector<Vec> cols = code.parity_check().col_list();
  Vec acc(r);
  Vec x(code.n(), 0);
  return for_each_subset(code.n(), w, [&](const std::vector<std::size_t>& t) {
    bool go = for_each_tuple(w, 1, f.q(), [&](const std::vector<Elem>& v) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t i = 0; i < w; ++i) {
        const Vec& c = cols[t[i]];
        for (std::size_t row = 0; row < r; ++row)
          acc[row] = f.add(acc[row], f.mul(c[row], v[i]));
        x[t[i]] = v[i];
      }
      bool more = fn(codec.encode(acc), x);
      return more;
    });
    for (std::size_t i : t) x[i] = 0;
    return go;
  });
}

}  // namespace

std::optional<Vec> member(const SyndromeBallQuery& query, const Vec& s,
                          std::uint64_t cap) {
  if (query.code == nullptr) {
    throw Error(ErrorCode::kDomainError, "query without a code");
  }
  const LinearCode& code = *query.code;
  const Field& f = code.field();
  if (s.size() != code.r()) {
    throw Error(ErrorCode::kDimensionMismatch, "syndrome length");
  }
  const std::size_t radius = std::min(query.radius, code.n());

  switch (query.strategy) {
    case BallStrategy::kPrecomputed: {
      if (query.precomputed == nullptr ||
          query.precomputed->radius() != query.radius) {
        throw Error(ErrorCode::kDomainError, "precomputed set radius mismatch");
      }
      const Vec* x = query.precomputed->preimage(s);
      if (x == nullptr) return std::nullopt;
      return *x;
    }
    case BallStrategy::kFullEnumeration: {
      const std::uint64_t cost = sat_ball_volume(code.n(), f.q(), radius);
      if (cost > cap) throw BudgetExceeded(cost, cap, "member");
      VectorCodec codec(f.q(), code.r());
      const std::uint64_t target = codec.encode(s);
      std::optional<Vec> found;
      for (std::size_t w = 0; w <= radius && !found; ++w) {
        for_each_weight_w(code, codec, w, [&](std::uint64_t key, const Vec& x) {
          if (key != target) return true;
          found = x;
          return false;
        });
      }
      return found;
    }
    case BallStrategy::kExhaustiveSupport: {
      const std::uint64_t cost = sat_support_count(code.n(), radius);
      if (cost > cap) throw BudgetExceeded(cost, cap, "member");
      const Matrix& h = code.parity_check();
      std::optional<Vec> found;
      for_each_support_up_to(
          code.n(), radius, [&](const std::vector<std::size_t>& t) {
            if (t.empty()) {
              if (is_zero(s)) found = Vec(code.n(), 0);
              return !found;
            }
            Matrix ht = h.select_columns(t);
            std::optional<Vec> z0 = solve_linear(f, ht, s);
            if (!z0) return true;
            // Every solution on the first solvable support is nonzero on
            // all of it, since smaller supports were already rejected.
            Vec z = lex_min_in_coset(f, *z0, kernel_basis(f, ht));
            Vec x(code.n(), 0);
            for (std::size_t i = 0; i < t.size(); ++i) x[t[i]] = z[i];
            found = std::move(x);
            return false;
          });
      return found;
    }
  }
  return std::nullopt;
}

SyndromeSet enumerate_ball(const LinearCode& code, std::size_t radius,
                           std::uint64_t cap) {
  const std::uint64_t cost =
      sat_ball_volume(code.n(), code.field().q(), radius);
  if (cost > cap) throw BudgetExceeded(cost, cap, "enumerate_ball");
  SyndromeSet set(code.field().q(), code.r(), radius);
  for (std::size_t w = 0; w <= radius && w <= code.n(); ++w) {
    for_each_weight_w(code, set.codec(), w,
                      [&](std::uint64_t key, const Vec& x) {
                        set.insert_key(key, x);
                        return true;
                      });
  }
  return set;
}

std::vector<SyndromeSet> enumerate_balls_up_to(const LinearCode& code,
                                               std::size_t max_radius,
                                               std::uint64_t cap) {
  const Field& f = code.field();
  const std::uint64_t column_space = sat_pow(f.q(), code.rank_h());
  std::vector<SyndromeSet> sets;
  SyndromeSet current(f.q(), code.r(), 0);
  current.insert(Vec(code.r(), 0), Vec(code.n(), 0));
  sets.push_back(current);
  std::uint64_t spent = 1;
  for (std::size_t e = 1; e <= max_radius; ++e) {
    SyndromeSet next(f.q(), code.r(), e);
    for (const auto& kv : sets.back().members()) next.insert_key(kv.first, kv.second);
    if (next.size() < column_space && e <= code.n()) {
      const std::uint64_t layer = sat_mul(sat_binomial(code.n(), e),
                                          sat_pow(f.q() - 1, e));
      spent = sat_add(spent, layer);
      if (spent > cap) throw BudgetExceeded(spent, cap, "enumerate_balls_up_to");
      for_each_weight_w(code, next.codec(), e,
                        [&](std::uint64_t key, const Vec& x) {
                          next.insert_key(key, x);
                          return true;
                        });
    }
    sets.push_back(std::move(next));
  }
  return sets;
}

BigInt ball_volume(std::size_t n, std::uint32_t q, std::size_t radius) {
  BigInt total = 0;
  for (std::size_t i = 0; i <= radius && i <= n; ++i) {
    total += big_binomial(n, i) * big_pow(BigInt(q - 1), i);
  }
  return total;
}

void save_syndrome_set(const std::string& path, const SyndromeSetKey& key,
                       const SyndromeSet& set) {
  nlohmann::json j;
  j["seed"] = key.seed;
  j["n"] = key.n;
  j["r"] = key.r;
  j["q"] = key.q;
  j["radius"] = key.radius;
  nlohmann::json members = nlohmann::json::array();
  for (std::uint64_t k : set.sorted_keys()) {
    members.push_back({k, set.members().at(k)});
  }
  j["members"] = std::move(members);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kConfigError, "cannot write " + path);
  out << j.dump() << '\n';
}

SyndromeSet load_syndrome_set(const std::string& path,
                              const SyndromeSetKey& expected) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot read " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  SyndromeSetKey key;
  key.seed = j.at("seed").get<std::uint64_t>();
  key.n = j.at("n").get<std::size_t>();
  key.r = j.at("r").get<std::size_t>();
  key.q = j.at("q").get<std::uint32_t>();
  key.radius = j.at("radius").get<std::size_t>();
  if (!(key == expected)) {
    throw Error(ErrorCode::kCacheMismatch, "cache key differs for " + path);
  }
  SyndromeSet set(key.q, key.r, key.radius);
  for (const auto& m : j.at("members")) {
    set.insert_key(m.at(0).get<std::uint64_t>(), m.at(1).get<Vec>());
  }
  return set;
}

}  // namespace synlab
