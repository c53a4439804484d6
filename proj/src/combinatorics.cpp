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

#include "synlab/combinatorics.hpp"

namespace synlab {

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated) break;
  }
  return r;
}

std::uint64_t sat_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt b = big_binomial(n, k);
  if (b > BigInt(kSaturated)) return kSaturated;
  return static_cast<std::uint64_t>(b);
}

BigInt big_binomial(std::uint64_t n, std::uint64_t k) {
  return big_binomial(BigInt(n), k);
}

BigInt big_binomial(const BigInt& n, std::uint64_t k) {
  if (BigInt(k) > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return r;
}

std::uint64_t sat_ball_volume(std::size_t n, std::uint64_t q,
                              std::size_t radius) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i <= radius && i <= n; ++i) {
    total = sat_add(total, sat_mul(sat_binomial(n, i), sat_pow(q - 1, i)));
  }
  return total;
}

std::uint64_t sat_support_count(std::size_t n, std::size_t radius) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i <= radius && i <= n; ++i) {
    total = sat_add(total, sat_binomial(n, i));
  }
  return total;
}

}  // namespace synlab
