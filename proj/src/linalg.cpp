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

#include "synlab/linalg.hpp"

#include <algorithm>
#include <string>

namespace synlab {
namespace {

void check_len(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_len(rows[i].size(), cols, "row length");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    check_len(cols[j].size(), rows, "column length");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<Vec> Matrix::col_list() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
  return m;
}

std::size_t weight(const Vec& v) {
  std::size_t w = 0;
  for (Elem e : v) w += (e != 0);
  return w;
}

std::vector<std::size_t> support(const Vec& v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

std::vector<std::size_t> row_support(const Matrix& x) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x.at(i, j) != 0) {
        s.push_back(i);
        break;
      }
    }
  }
  return s;
}

std::size_t row_weight(const Matrix& x) { return row_support(x).size(); }

Vec vec_add(const Field& f, const Vec& a, const Vec& b) {
  check_len(a.size(), b.size(), "vec_add");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const Field& f, const Vec& a, const Vec& b) {
  check_len(a.size(), b.size(), "vec_sub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& f, Elem c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

Vec vec_axpy(const Field& f, const Vec& a, Elem c, const Vec& b) {
  check_len(a.size(), b.size(), "vec_axpy");
  Vec r(a);
  if (c == 0) return r;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(r[i], f.mul(c, b[i]));
  return r;
}

Elem dot(const Field& f, const Vec& a, const Vec& b) {
  check_len(a.size(), b.size(), "dot");
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

Vec mat_vec(const Field& f, const Matrix& a, const Vec& x) {
  check_len(a.cols(), x.size(), "mat_vec");
  Vec r(a.rows(), 0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (x[j] == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      r[i] = f.add(r[i], f.mul(a.at(i, j), x[j]));
  }
  return r;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  check_len(a.cols(), b.rows(), "mat_mul");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
    }
  }
  return c;
}

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Rref rref(const Field& f, Matrix a) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a.at(piv, j), a.at(row, j));
    }
    Elem inv = f.inv(a.at(row, col));
    for (std::size_t j = col; j < a.cols(); ++j)
      a.at(row, j) = f.mul(a.at(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col) == 0) continue;
      Elem factor = f.neg(a.at(i, col));
      for (std::size_t j = col; j < a.cols(); ++j)
        a.at(i, j) = f.add(a.at(i, j), f.mul(factor, a.at(row, j)));
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const Field& f, const Matrix& a) {
  EchelonBasis eb(&f, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) eb.insert(a.row(i));
  return eb.dim();
}

std::size_t rank_of_vectors(const Field& f, const std::vector<Vec>& vs,
                            std::size_t len) {
  EchelonBasis eb(&f, len);
  for (const Vec& v : vs) eb.insert(v);
  return eb.dim();
}

std::vector<Vec> kernel_basis(const Field& f, const Matrix& a) {
  Rref r = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
      v[r.pivot_cols[i]] = f.neg(r.reduced.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve_linear(const Field& f, const Matrix& a, const Vec& b) {
  check_len(a.rows(), b.size(), "solve_linear");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  Rref r = rref(f, std::move(aug));
  if (!r.pivot_cols.empty() && r.pivot_cols.back() == a.cols()) {
    return std::nullopt;
  }
  Vec x(a.cols(), 0);
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
    x[r.pivot_cols[i]] = r.reduced.at(i, a.cols());
  return x;
}

Vec lex_min_in_coset(const Field& f, Vec offset,
                     const std::vector<Vec>& directions) {
  if (directions.empty()) return offset;
  Rref r = rref(f, Matrix::from_rows(directions, offset.size()));
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    std::size_t p = r.pivot_cols[i];
    if (offset[p] == 0) continue;
    Elem c = f.neg(offset[p]);
    for (std::size_t j = 0; j < offset.size(); ++j)
      offset[j] = f.add(offset[j], f.mul(c, r.reduced.at(i, j)));
  }
  return offset;
}

Vec EchelonBasis::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Elem c = v[pivots_[i]];
    if (c == 0) continue;
    Elem nc = f_->neg(c);
    const Vec& row = rows_[i];
    for (std::size_t j = 0; j < len_; ++j) {
      if (row[j] != 0) v[j] = f_->add(v[j], f_->mul(nc, row[j]));
    }
  }
  return v;
}

bool EchelonBasis::insert(const Vec& v) {
  check_len(v.size(), len_, "EchelonBasis::insert");
  Vec r = reduce(v);
  std::size_t p = 0;
  while (p < len_ && r[p] == 0) ++p;
  if (p == len_) return false;
  Elem inv = f_->inv(r[p]);
  for (auto& e : r) e = f_->mul(e, inv);
  // Keep earlier rows reduced at the new pivot so reduce() stays one pass.
  for (auto& row : rows_) {
    Elem c = row[p];
    if (c == 0) continue;
    Elem nc = f_->neg(c);
    for (std::size_t j = 0; j < len_; ++j)
      if (r[j] != 0) row[j] = f_->add(row[j], f_->mul(nc, r[j]));
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool EchelonBasis::contains(const Vec& v) const {
  check_len(v.size(), len_, "EchelonBasis::contains");
  return is_zero(reduce(v));
}

RowSpaceBasis row_space_tools(const Field& f, const Matrix& x,
                              const std::vector<Vec>& given) {
  EchelonBasis rowx(&f, x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) rowx.insert(x.row(i));
  for (std::size_t g = 0; g < given.size(); ++g) {
    check_len(given[g].size(), x.cols(), "row_space_tools");
    if (!rowx.contains(given[g])) {
      throw Error(ErrorCode::kNotInRowSpace,
                  "given vector " + std::to_string(g) + " is not in Row(X)");
    }
  }
  RowSpaceBasis out;
  EchelonBasis eb(&f, x.cols());
  for (std::size_t g = 0; g < given.size(); ++g) {
    if (eb.insert(given[g])) {
      out.basis.push_back(given[g]);
      out.given_used.push_back(g);
    }
  }
  for (std::size_t i = 0; i < x.rows() && eb.dim() < rowx.dim(); ++i) {
    Vec row = x.row(i);
    if (eb.insert(row)) {
      out.basis.push_back(std::move(row));
      out.completion.push_back(i);
    }
  }
  return out;
}

Matrix express_in_row_basis(const Field& f, const Matrix& x, const Matrix& w) {
  check_len(x.cols(), w.cols(), "express_in_row_basis");
  Matrix wt = w.transpose();
  Rref r = rref(f, wt);
  if (r.rank() != w.rows()) {
    throw Error(ErrorCode::kNotExpressible, "basis rows are dependent");
  }
  Matrix m(x.rows(), w.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::optional<Vec> sol = solve_linear(f, wt, x.row(i));
    if (!sol) {
      throw Error(ErrorCode::kNotExpressible,
                  "row " + std::to_string(i) + " is outside Row(W)");
    }
    for (std::size_t j = 0; j < w.rows(); ++j) m.at(i, j) = (*sol)[j];
  }
  return m;
}

}  // namespace synlab
