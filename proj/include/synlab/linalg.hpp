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

#ifndef SYNLAB_LINALG_HPP_
#define SYNLAB_LINALG_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "synlab/field.hpp"

namespace synlab {

using Vec = std::vector<Elem>;

// Dense row-major matrix over GF(q).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  std::vector<Vec> row_list() const;
  std::vector<Vec> col_list() const;

  Matrix transpose() const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// Hamming weight and support (0-based indices).
std::size_t weight(const Vec& v);
std::vector<std::size_t> support(const Vec& v);
bool is_zero(const Vec& v);

// Indices of the nonzero rows of X, and their count.
std::vector<std::size_t> row_support(const Matrix& x);
std::size_t row_weight(const Matrix& x);

Vec vec_add(const Field& f, const Vec& a, const Vec& b);
Vec vec_sub(const Field& f, const Vec& a, const Vec& b);
Vec vec_scale(const Field& f, Elem c, const Vec& a);
// a + c * b
Vec vec_axpy(const Field& f, const Vec& a, Elem c, const Vec& b);
Elem dot(const Field& f, const Vec& a, const Vec& b);

Vec mat_vec(const Field& f, const Matrix& a, const Vec& x);
Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);

// Lexicographic comparison by element index, coordinate 0 first.
bool lex_less(const Vec& a, const Vec& b);

// Reduced row echelon form. Pivots are taken column by column from the
// lowest-index row holding a nonzero entry.
struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

Rref rref(const Field& f, Matrix a);
std::size_t rank(const Field& f, const Matrix& a);
std::size_t rank_of_vectors(const Field& f, const std::vector<Vec>& vs,
                            std::size_t len);

// Basis of {x : A x = 0}, one vector per free column, in column order.
std::vector<Vec> kernel_basis(const Field& f, const Matrix& a);

// Some x with A x = b, free variables set to zero.
std::optional<Vec> solve_linear(const Field& f, const Matrix& a, const Vec& b);

// Lexicographically smallest element of offset + span(directions).
Vec lex_min_in_coset(const Field& f, Vec offset,
                     const std::vector<Vec>& directions);

// Incremental echelon basis for membership and independence tests.
class EchelonBasis {
 public:
  EchelonBasis(const Field* f, std::size_t len) : f_(f), len_(len) {}

  // Adds v if independent of the current span. Returns true if added.
  bool insert(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t dim() const { return rows_.size(); }
  // v minus its projection onto the span along pivot coordinates.
  Vec reduce(Vec v) const;

 private:
  const Field* f_;
  std::size_t len_;
  std::vector<Vec> rows_;  // each normalized with 1 at pivots_[i]
  std::vector<std::size_t> pivots_;
};

struct RowSpaceBasis {
  std::vector<Vec> basis;       // independent subset of given, then completion
  std::vector<std::size_t> given_used;   // indices into given
  std::vector<std::size_t> completion;   // indices of rows of X
};

// Extends an independent subset of `given` to a basis of Row(X) using rows of
// X. Throws kNotInRowSpace if some given vector is outside Row(X).
RowSpaceBasis row_space_tools(const Field& f, const Matrix& x,
                              const std::vector<Vec>& given);

// The unique M with X = M W, where W has independent rows.
// Throws kNotExpressible if some row of X is outside Row(W).
Matrix express_in_row_basis(const Field& f, const Matrix& x, const Matrix& w);

}  // namespace synlab

#endif  // SYNLAB_LINALG_HPP_
