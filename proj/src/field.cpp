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

#include "synlab/field.hpp"

#include "synlab/rng.hpp"

namespace synlab {
namespace {

using Poly = std::vector<std::uint32_t>;  // lowest degree first

std::vector<std::uint32_t> digits(std::uint32_t v, std::uint32_t p,
                                  std::uint32_t m) {
  std::vector<std::uint32_t> d(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i > 0; --i) v = v * p + d[i - 1];
  return v;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2).
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo b over F_p. b must be nonzero after trimming.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t m = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= m / 2; ++d) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t v = 0; v < count; ++v) {
      Poly g = digits(v, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Product of two field elements by schoolbook polynomial arithmetic.
std::uint32_t poly_mul_mod(std::uint32_t a, std::uint32_t b,
                           const FieldSpec& s) {
  if (s.m == 1) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % s.p);
  }
  Poly pa = digits(a, s.p, s.m), pb = digits(b, s.p, s.m);
  Poly prod(2 * s.m, 0);
  for (std::uint32_t i = 0; i < s.m; ++i) {
    for (std::uint32_t j = 0; j < s.m; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % s.p);
    }
  }
  Poly r = poly_mod(prod, s.modulus, s.p);
  r.resize(s.m, 0);
  return undigits(r, s.p);
}

std::uint32_t digit_add(std::uint32_t a, std::uint32_t b, const FieldSpec& s) {
  std::uint32_t r = 0, place = 1;
  for (std::uint32_t i = 0; i < s.m; ++i) {
    r += ((a % s.p + b % s.p) % s.p) * place;
    a /= s.p;
    b /= s.p;
    place *= s.p;
  }
  return r;
}

}  // namespace

Field Field::make(std::uint32_t q) {
  if (q < 2 || q > kMaxFieldOrder) {
    throw Error(ErrorCode::kNotPrimePower,
                "field order " + std::to_string(q) + " outside [2, 65536]");
  }
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t m = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) {
    throw Error(ErrorCode::kNotPrimePower,
                std::to_string(q) + " is not a prime power");
  }

  Field f;
  f.spec_.p = p;
  f.spec_.m = m;
  f.spec_.q = q;
  if (m == 1) {
    f.spec_.modulus = {};
  } else {
    // Smallest monic irreducible when coefficients are read from the highest
    // degree down, i.e. by the integer value of the base-p encoding.
    for (std::uint32_t v = 0;; ++v) {
      Poly cand = digits(v, p, m);
      cand.push_back(1);
      if (cand[0] != 0 && is_irreducible(cand, p)) {
        f.spec_.modulus = cand;
        break;
      }
    }
  }

  const std::uint32_t order = q - 1;
  f.exp_.assign(2 * static_cast<std::size_t>(order), 0);
  f.log_.assign(q, 0);
  if (q == 2) {
    f.exp_ = {1, 1};
  } else {
    for (std::uint32_t g = 2; g < q; ++g) {
      std::uint32_t x = 1, k = 0;
      do {
        f.exp_[k] = x;
        x = poly_mul_mod(x, g, f.spec_);
        ++k;
      } while (x != 1 && k < order);
      if (x == 1 && k == order) break;
    }
  }
  for (std::uint32_t i = 0; i < order; ++i) {
    f.exp_[i + order] = f.exp_[i];
    f.log_[f.exp_[i]] = i;
  }

  f.neg_table_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::vector<std::uint32_t> d = digits(a, p, m);
    for (auto& x : d) x = (p - x) % p;
    f.neg_table_[a] = undigits(d, p);
  }
  if (p != 2 && m > 1 && q <= 1024) {
    f.add_table_.assign(static_cast<std::size_t>(q) * q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        f.add_table_[a * q + b] = digit_add(a, b, f.spec_);
  }
  return f;
}

Elem Field::add_digits(Elem a, Elem b) const {
  return digit_add(a, b, spec_);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::size_t>(
      (static_cast<std::uint64_t>(log_[a]) * (e % (spec_.q - 1))) %
      (spec_.q - 1))];
}

Elem Field::from_int(long long v) const {
  long long p = spec_.p;
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Field Field::with_corrupted_product(std::size_t exp_index) const {
  Field copy = *this;
  std::size_t i = exp_index % copy.exp_.size();
  copy.exp_[i] = copy.exp_[i] % (spec_.q - 1) + 1;
  if (copy.exp_[i] == exp_[i]) copy.exp_[i] = (exp_[i] % (spec_.q - 1)) + 1;
  if (spec_.q == 2) copy.exp_[i] = 0;
  return copy;
}

FieldAxiomReport check_field_axioms(const Field& f, std::size_t max_pairs) {
  FieldAxiomReport rep;
  const FieldSpec& s = f.spec();
  auto fail = [&](const std::string& msg) {
    if (rep.ok) rep.first_failure = msg;
    rep.ok = false;
  };
  auto check_pair = [&](Elem a, Elem b) {
    if (f.mul(a, b) != poly_mul_mod(a, b, s)) {
      fail("product " + std::to_string(a) + "*" + std::to_string(b));
    }
    if (f.add(a, b) != digit_add(a, b, s)) {
      fail("sum " + std::to_string(a) + "+" + std::to_string(b));
    }
    if (f.mul(a, b) != f.mul(b, a)) fail("commutativity");
  };
  const std::uint64_t q = s.q;
  if (q * q <= max_pairs) {
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) check_pair(a, b);
  } else {
    Rng rng(derive_seed(q, "field-axioms", 0));
    for (std::size_t i = 0; i < max_pairs; ++i) {
      check_pair(static_cast<Elem>(rng.below(q)),
                 static_cast<Elem>(rng.below(q)));
    }
    // Every table entry is reached through a * 1.
    for (Elem a = 0; a < q; ++a) check_pair(a, 1);
    for (Elem a = 1; a < q; ++a) check_pair(a, f.generator());
  }
  for (Elem a = 1; a < q; ++a) {
    if (f.mul(a, f.inv(a)) != 1) fail("inverse of " + std::to_string(a));
    if (f.add(a, f.neg(a)) != 0) fail("negation of " + std::to_string(a));
  }
  Rng rng(derive_seed(q, "field-distributivity", 0));
  for (std::size_t i = 0; i < 256; ++i) {
    Elem a = static_cast<Elem>(rng.below(q));
    Elem b = static_cast<Elem>(rng.below(q));
    Elem c = static_cast<Elem>(rng.below(q));
    if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) {
      fail("distributivity");
    }
    if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) fail("associativity");
  }
  return rep;
}

}  // namespace synlab
