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

#ifndef SYNLAB_BALL_HPP_
#define SYNLAB_BALL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "synlab/code.hpp"

namespace synlab {

// Packs vectors of F_q^len into integers, coordinate 0 most significant, so
// integer order equals lexicographic order.
class VectorCodec {
 public:
  VectorCodec(std::uint32_t q, std::size_t len);
  std::uint64_t encode(const Vec& v) const;
  Vec decode(std::uint64_t key) const;
  // q^len, the number of keys.
  std::uint64_t space_size() const { return size_; }
  std::size_t length() const { return len_; }

 private:
  std::uint32_t q_;
  std::size_t len_;
  std::uint64_t size_;
};

// H_E with one stored preimage per member. The stored preimage is the
// canonical witness described at `member`.
class SyndromeSet {
 public:
  SyndromeSet(std::uint32_t q, std::size_t r, std::size_t radius)
      : codec_(q, r), q_(q), radius_(radius) {}

  std::size_t radius() const { return radius_; }
  std::size_t r() const { return codec_.length(); }
  std::uint32_t q() const { return q_; }
  std::size_t size() const { return members_.size(); }
  const VectorCodec& codec() const { return codec_; }

  bool contains(const Vec& s) const {
    return members_.count(codec_.encode(s)) != 0;
  }
  bool contains_key(std::uint64_t key) const { return members_.count(key); }
  const Vec* preimage(const Vec& s) const;
  // Inserts if absent. Returns true when inserted.
  bool insert(const Vec& s, const Vec& x);
  bool insert_key(std::uint64_t key, const Vec& x);

  // Member keys in increasing (lexicographic) order.
  std::vector<std::uint64_t> sorted_keys() const;
  const std::unordered_map<std::uint64_t, Vec>& members() const {
    return members_;
  }

 private:
  VectorCodec codec_;
  std::uint32_t q_;
  std::size_t radius_;
  std::unordered_map<std::uint64_t, Vec> members_;
};

enum class BallStrategy { kExhaustiveSupport, kFullEnumeration, kPrecomputed };

struct SyndromeBallQuery {
  const LinearCode* code = nullptr;
  std::size_t radius = 0;
  BallStrategy strategy = BallStrategy::kExhaustiveSupport;
  const SyndromeSet* precomputed = nullptr;  // for kPrecomputed
};

// Whether s lies in H_E. The witness has minimum weight; among those it has
// the first support in (size, lexicographic) order and then the
// lexicographically first nonzero values on that support. All strategies
// return the same witness.
std::optional<Vec> member(const SyndromeBallQuery& query, const Vec& s,
                          std::uint64_t cap = kDefaultBudget);

// All of H_E. Costs the ball volume.
SyndromeSet enumerate_ball(const LinearCode& code, std::size_t radius,
                           std::uint64_t cap = kDefaultBudget);

// H_0, H_1, ..., H_maxRadius. Stops enumerating once H_E fills the column
// space of H, after which every larger ball has the same image.
std::vector<SyndromeSet> enumerate_balls_up_to(
    const LinearCode& code, std::size_t max_radius,
    std::uint64_t cap = kDefaultBudget);

// sum_{i <= E} C(n, i) (q - 1)^i, exact.
BigInt ball_volume(std::size_t n, std::uint32_t q, std::size_t radius);

// Identifies a cached SyndromeSet on disk.
struct SyndromeSetKey {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::uint32_t q = 0;
  std::size_t radius = 0;
  bool operator==(const SyndromeSetKey&) const = default;
};

void save_syndrome_set(const std::string& path, const SyndromeSetKey& key,
                       const SyndromeSet& set);
// Throws kCacheMismatch if the file was written for another key.
SyndromeSet load_syndrome_set(const std::string& path,
                              const SyndromeSetKey& expected);

}  // namespace synlab

#endif  // SYNLAB_BALL_HPP_
