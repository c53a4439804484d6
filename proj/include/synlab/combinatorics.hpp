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

#ifndef SYNLAB_COMBINATORICS_HPP_
#define SYNLAB_COMBINATORICS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace synlab {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kSaturated =
    std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t sat_binomial(std::uint64_t n, std::uint64_t k);

BigInt big_binomial(std::uint64_t n, std::uint64_t k);
BigInt big_binomial(const BigInt& n, std::uint64_t k);
BigInt big_pow(const BigInt& base, std::uint64_t exp);

// Number of vectors of weight <= radius in F_q^n, saturating.
std::uint64_t sat_ball_volume(std::size_t n, std::uint64_t q,
                              std::size_t radius);

// Number of supports of size <= radius, saturating.
std::uint64_t sat_support_count(std::size_t n, std::size_t radius);

// Visits every k-subset of {0..n-1} in lexicographic order. The callback
// returns false to stop. Returns false if stopped early.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Visits supports ordered by size, then lexicographically.
template <typename Fn>
bool for_each_support_up_to(std::size_t n, std::size_t radius, Fn&& fn) {
  for (std::size_t w = 0; w <= radius && w <= n; ++w) {
    if (!for_each_subset(n, w, fn)) return false;
  }
  return true;
}

// Visits tuples in {lo..hi-1}^k in lexicographic order.
template <typename Fn>
bool for_each_tuple(std::size_t k, std::uint32_t lo, std::uint32_t hi,
                    Fn&& fn) {
  if (hi <= lo && k > 0) return true;
  std::vector<std::uint32_t> t(k, lo);
  while (true) {
    if (!fn(static_cast<const std::vector<std::uint32_t>&>(t))) return false;
    std::size_t i = k;
    while (i > 0 && t[i - 1] == hi - 1) {
      t[i - 1] = lo;
      --i;
    }
    if (i == 0) return true;
    ++t[i - 1];
  }
}

}  // namespace synlab

#endif  // SYNLAB_COMBINATORICS_HPP_
