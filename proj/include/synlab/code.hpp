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

#ifndef SYNLAB_CODE_HPP_
#define SYNLAB_CODE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "synlab/combinatorics.hpp"
#include "synlab/field.hpp"
#include "synlab/linalg.hpp"

namespace synlab {

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

// Minimum distance, or the marker for the zero code. Never a number then.
class MinDistance {
 public:
  static MinDistance infinite() { return MinDistance(); }
  static MinDistance finite(std::size_t d) { return MinDistance(d); }

  bool is_infinite() const { return !value_.has_value(); }
  // Throws kDomainError for the infinite marker.
  std::size_t value() const;
  // d(C) >= x, true for the zero code.
  bool at_least(std::size_t x) const { return is_infinite() || *value_ >= x; }
  bool operator==(const MinDistance& o) const { return value_ == o.value_; }
  std::string to_string() const {
    return is_infinite() ? "inf" : std::to_string(*value_);
  }

 private:
  MinDistance() = default;
  explicit MinDistance(std::size_t d) : value_(d) {}
  std::optional<std::size_t> value_;
};

struct DistanceResult {
  MinDistance distance = MinDistance::infinite();
  std::optional<Vec> witness;  // a codeword of weight d
};

// C = ker(H) for a parity-check matrix H over GF(q).
class LinearCode {
 public:
  LinearCode(FieldPtr field, Matrix h);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Matrix& parity_check() const { return h_; }
  std::size_t n() const { return h_.cols(); }
  std::size_t r() const { return h_.rows(); }
  std::size_t rank_h() const { return rank_h_; }
  std::size_t dimension() const { return kernel_.size(); }
  const std::vector<Vec>& kernel() const { return kernel_; }

  Vec syndrome(const Vec& x) const { return mat_vec(*field_, h_, x); }
  bool contains(const Vec& x) const { return is_zero(syndrome(x)); }

  // Distance computed earlier by min_distance, if any.
  std::optional<DistanceResult> cached_distance() const;
  void store_distance(const DistanceResult& d) const;

 private:
  struct Cache {
    std::mutex mu;
    std::optional<DistanceResult> distance;
  };

  FieldPtr field_;
  Matrix h_;
  std::size_t rank_h_ = 0;
  std::vector<Vec> kernel_;
  std::shared_ptr<Cache> cache_;
};

// Uniformly random H (r x n) from the stream for `seed`.
LinearCode sample_code(std::size_t n, std::size_t r, FieldPtr field,
                       std::uint64_t seed);

enum class DistanceStrategy { kAuto, kCodewordEnumeration, kSupportSearch };

// Exact minimum distance. kCodewordEnumeration costs q^k; kSupportSearch
// tests column dependence on supports of growing size and costs
// sum_{i <= rank(H)+1} C(n, i). kAuto picks the cheaper one.
DistanceResult min_distance(const LinearCode& code,
                            std::uint64_t cap = kDefaultBudget,
                            DistanceStrategy strategy = DistanceStrategy::kAuto);

struct NearestCodeword {
  std::size_t distance = 0;
  Vec codeword;
};

// d(y, C) with the lexicographically smallest nearest codeword.
NearestCodeword distance_to_code(const LinearCode& code, const Vec& y,
                                 std::uint64_t cap = kDefaultBudget);

// |{c in C : d(y, c) <= radius}|.
std::uint64_t count_codewords_in_ball(const LinearCode& code, const Vec& y,
                                      std::size_t radius,
                                      std::uint64_t cap = kDefaultBudget);

// Calls fn(codeword) for all q^k codewords in a fixed order.
void for_each_codeword(const LinearCode& code,
                       const std::function<bool(const Vec&)>& fn);

// Frequency table of H X over uniform H, indexed by the entries of H X read
// row by row as a base-q number.
struct UniformImageTable {
  std::size_t cells = 0;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> counts;
  // max over cells of |count - expected| / sqrt(expected (1 - 1/cells)).
  double max_sigma = 0.0;
  double chi_square = 0.0;
};

UniformImageTable uniform_image_test(const Field& f, const Matrix& x,
                                     std::size_t r, std::uint64_t samples,
                                     std::uint64_t seed);

}  // namespace synlab

#endif  // SYNLAB_CODE_HPP_
