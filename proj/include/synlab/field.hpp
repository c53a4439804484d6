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

#ifndef SYNLAB_FIELD_HPP_
#define SYNLAB_FIELD_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "synlab/error.hpp"

namespace synlab {

// A field element is its index in [0, q). For q = p^m the base-p digits of
// the index are the polynomial coefficients, lowest degree first. Index 0 is
// zero and index 1 is one.
using Elem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  // Monic modulus coefficients, lowest degree first, length m + 1. Empty
  // for prime fields.
  std::vector<std::uint32_t> modulus;
};

class Field {
 public:
  // Throws kNotPrimePower unless q = p^m with 2 <= q <= 2^16.
  static Field make(std::uint32_t q);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t q() const { return spec_.q; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t m() const { return spec_.m; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (spec_.p == 2) return a ^ b;
    if (spec_.m == 1) {
      Elem s = a + b;
      return s >= spec_.p ? s - spec_.p : s;
    }
    if (!add_table_.empty()) return add_table_[a * spec_.q + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_table_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
    return exp_[(spec_.q - 1 - log_[a]) % (spec_.q - 1)];
  }
  Elem div(Elem a, Elem b) const {
    if (b == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
    if (a == 0) return 0;
    return exp_[log_[a] + (spec_.q - 1) - log_[b]];
  }
  Elem pow(Elem a, std::uint64_t e) const;

  // Image of an integer in the prime subfield.
  Elem from_int(long long v) const;

  // The generator whose powers fill the multiplicative tables.
  Elem generator() const { return exp_[1 % (spec_.q - 1)]; }

  std::string to_string(Elem a) const { return std::to_string(a); }

  // Copy with one multiplication-table entry altered. Used to check that the
  // field-axiom suite notices a corrupted table.
  Field with_corrupted_product(std::size_t exp_index) const;

 private:
  Field() = default;
  Elem add_digits(Elem a, Elem b) const;

  FieldSpec spec_;
  std::vector<Elem> exp_;  // length 2(q-1), exp_[i] = g^i
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_table_;
  std::vector<Elem> add_table_;  // only for small extension fields
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(std::uint32_t q) {
  return std::make_shared<const Field>(Field::make(q));
}

// Outcome of checking the field axioms exhaustively (or on a sample).
struct FieldAxiomReport {
  bool ok = true;
  std::string first_failure;
};

FieldAxiomReport check_field_axioms(const Field& f, std::size_t max_pairs);

}  // namespace synlab

#endif  // SYNLAB_FIELD_HPP_
