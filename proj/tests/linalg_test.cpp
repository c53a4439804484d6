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

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace synlab {
namespace {

TEST(LinalgTest, WeightAndSupport) {
  Vec v{0, 1, 0, 3};
  EXPECT_EQ(weight(v), 2u);
  EXPECT_EQ(support(v), (std::vector<std::size_t>{1, 3}));
  Matrix x = Matrix::from_rows({{0, 0}, {1, 0}, {0, 0}, {0, 2}}, 2);
  EXPECT_EQ(row_support(x), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(row_weight(x), 2u);
}

TEST(LinalgTest, RankMatchesSpanSize) {
  Rng rng(11);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    Field f = Field::make(q);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
      Matrix a = oracle::random_matrix(f, rows, cols, rng);
      if (trial % 3 == 0 && rows > 1) {
        // force a dependent row
        for (std::size_t j = 0; j < cols; ++j)
          a.at(rows - 1, j) = f.add(a.at(0, j), a.at(rows - 2, j));
      }
      EXPECT_EQ(rank(f, a), oracle::rank_by_span(f, a.row_list(), cols));
      EXPECT_EQ(rref(f, a).rank(), rank(f, a));
      EXPECT_EQ(rank(f, a), rank(f, a.transpose()));
    }
  }
}

TEST(LinalgTest, KernelHasRankNullityAndIsAnnihilated) {
  Rng rng(12);
  for (std::uint32_t q : {2u, 3u, 7u, 8u}) {
    Field f = Field::make(q);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(7);
      Matrix a = oracle::random_matrix(f, rows, cols, rng);
      std::vector<Vec> ker = kernel_basis(f, a);
      EXPECT_EQ(ker.size() + rank(f, a), cols);
      EXPECT_EQ(rank_of_vectors(f, ker, cols), ker.size());
      for (const Vec& v : ker) EXPECT_TRUE(is_zero(mat_vec(f, a, v)));
    }
  }
}

TEST(LinalgTest, SolveLinearAgreesWithBruteForce) {
  Rng rng(13);
  Field f = Field::make(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng.below(3), cols = 1 + rng.below(4);
    Matrix a = oracle::random_matrix(f, rows, cols, rng);
    Vec b = oracle::random_vector(f, rows, rng);
    bool solvable = false;
    for (const Vec& x : oracle::all_vectors(3, cols))
      if (oracle::apply(f, a, x) == b) solvable = true;
    std::optional<Vec> x = solve_linear(f, a, b);
    EXPECT_EQ(x.has_value(), solvable);
    if (x) EXPECT_EQ(mat_vec(f, a, *x), b);
  }
}

TEST(LinalgTest, SolveLinearSetsFreeVariablesToZero) {
  Field f = Field::make(5);
  Matrix a = Matrix::from_rows({{1, 2, 0}, {0, 0, 1}}, 3);
  auto x = solve_linear(f, a, Vec{3, 4});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vec{3, 0, 4}));
}

TEST(LinalgTest, LexMinInCosetMatchesEnumeration) {
  Rng rng(14);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    Field f = Field::make(q);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t len = 1 + rng.below(4), k = rng.below(3);
      std::vector<Vec> dirs;
      for (std::size_t i = 0; i < k; ++i)
        dirs.push_back(oracle::random_vector(f, len, rng));
      Vec off = oracle::random_vector(f, len, rng);
      Vec best = off;
      for (const Vec& s : oracle::span(f, dirs, len)) {
        Vec c = vec_add(f, off, s);
        if (lex_less(c, best)) best = c;
      }
      EXPECT_EQ(lex_min_in_coset(f, off, dirs), best);
    }
  }
}

TEST(LinalgTest, RowSpaceToolsCompletesToBasis) {
  Field f = Field::make(5);
  Matrix x = Matrix::from_rows({{1, 0, 2, 0}, {0, 1, 1, 1}, {1, 1, 3, 1}}, 4);
  // given lies in Row(X) and is a multiple of row 0
  RowSpaceBasis b = row_space_tools(f, x, {Vec{2, 0, 4, 0}});
  EXPECT_EQ(b.basis.size(), 2u);
  EXPECT_EQ(b.given_used, (std::vector<std::size_t>{0}));
  EXPECT_EQ(b.completion, (std::vector<std::size_t>{1}));
  EXPECT_EQ(rank_of_vectors(f, b.basis, 4), 2u);
}

TEST(LinalgTest, RowSpaceToolsRejectsOutsideVector) {
  Field f = Field::make(5);
  Matrix x = Matrix::from_rows({{1, 0, 0}, {0, 1, 0}}, 3);
  try {
    row_space_tools(f, x, {Vec{1, 0, 0}, Vec{0, 0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInRowSpace);
    EXPECT_NE(std::string(e.what()).find("vector 1"), std::string::npos);
  }
}

TEST(LinalgTest, ExpressInRowBasisRoundTrips) {
  Rng rng(15);
  for (std::uint32_t q : {3u, 4u, 7u}) {
    Field f = Field::make(q);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t k = 1 + rng.below(3), cols = k + rng.below(3);
      Matrix w = oracle::random_matrix(f, k, cols, rng);
      if (rank(f, w) != k) continue;
      Matrix m = oracle::random_matrix(f, 1 + rng.below(5), k, rng);
      Matrix x = mat_mul(f, m, w);
      EXPECT_EQ(express_in_row_basis(f, x, w), m);
    }
  }
}

TEST(LinalgTest, ExpressInRowBasisRejectsOutsideRow) {
  Field f = Field::make(3);
  Matrix w = Matrix::from_rows({{1, 0, 0}}, 3);
  Matrix x = Matrix::from_rows({{0, 1, 0}}, 3);
  try {
    express_in_row_basis(f, x, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotExpressible);
  }
}

TEST(LinalgTest, EchelonBasisMembership) {
  Field f = Field::make(7);
  EchelonBasis eb(&f, 3);
  EXPECT_TRUE(eb.insert(Vec{0, 2, 1}));
  EXPECT_TRUE(eb.insert(Vec{1, 1, 1}));
  EXPECT_FALSE(eb.insert(Vec{2, 4, 3}));
  EXPECT_TRUE(eb.contains(Vec{1, 3, 2}));
  EXPECT_FALSE(eb.contains(Vec{0, 0, 1}));
  EXPECT_EQ(eb.dim(), 2u);
}

}  // namespace
}  // namespace synlab
