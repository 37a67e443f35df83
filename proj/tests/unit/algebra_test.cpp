// Copyright 2026 The pimodulo Authors.
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

#include <gtest/gtest.h>

#include <set>

#include "pimodulo/algebra.hpp"

namespace pimodulo {
namespace {

TEST(Algebra, TableLookup) {
  // n = 2: rows x = 0, 1; columns are the subsets {}, {0}, {1}, {0,1}.
  FiniteAlgebra a(2, 1, {0, 1, 0, 1, 1, 1, 0, 0});
  EXPECT_EQ(a.subset_count(), 4U);
  EXPECT_EQ(a.full_subset(), 3U);
  EXPECT_EQ(a.pi(0, 1), 1U);
  EXPECT_EQ(a.pi(1, 3), 0U);
  // w ~> w' is Pi(w, {w'}).
  EXPECT_EQ(a.arrow(0, 1), a.pi(0, 2));
  EXPECT_EQ(a.arrow(1, 0), a.pi(1, 1));
}

TEST(Algebra, RejectsBadTables) {
  EXPECT_THROW(FiniteAlgebra(0, 0, {}), AlgebraError);
  EXPECT_THROW(FiniteAlgebra(2, 2, std::vector<Element>(8, 0)), AlgebraError);
  EXPECT_THROW(FiniteAlgebra(2, 0, std::vector<Element>(7, 0)), AlgebraError);
  EXPECT_THROW(FiniteAlgebra(2, 0, {0, 0, 0, 0, 0, 0, 0, 2}), AlgebraError);
}

TEST(Algebra, FullAlgebraCounts) {
  // n choices for the top times n^(n 2^n) tables.
  EXPECT_EQ(full_algebra_count(1), 1U);
  EXPECT_EQ(full_algebra_count(2), 512U);
  EXPECT_THROW(full_algebra_count(3), SizeTooLargeForExhaustive);
}

TEST(Algebra, EnumerationIsABijection) {
  auto all = enumerate_full_algebras(2);
  ASSERT_EQ(all.size(), 512U);
  std::set<std::pair<Element, std::vector<Element>>> distinct;
  for (const auto& a : all) distinct.emplace(a.top(), a.table());
  EXPECT_EQ(distinct.size(), 512U);
  AlgebraEnumerator e(2);
  EXPECT_EQ(e.at(0).table(), std::vector<Element>(8, 0));
  EXPECT_EQ(e.at(1).top(), 1U);
  EXPECT_THROW(e.at(512), std::out_of_range);
  ASSERT_EQ(enumerate_full_algebras(1).size(), 1U);
}

TEST(Algebra, SamplingIsSeeded) {
  auto a = sample_full_algebras(3, 10, 42);
  auto b = sample_full_algebras(3, 10, 42);
  auto c = sample_full_algebras(3, 10, 43);
  ASSERT_EQ(a.size(), 10U);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& alg : a) EXPECT_EQ(alg.table().size(), 24U);
}

TEST(Algebra, TextRoundTrip) {
  for (const auto& a : sample_full_algebras(3, 5, 1)) {
    EXPECT_EQ(read_algebra(write_algebra(a)), a);
  }
  FiniteAlgebra a = read_algebra("2 1\n0 1 0 1\n1 1 0 0\n");
  EXPECT_EQ(a, FiniteAlgebra(2, 1, {0, 1, 0, 1, 1, 1, 0, 0}));
  EXPECT_THROW(read_algebra("2 1\n0 1 0\n"), AlgebraError);
  EXPECT_THROW(read_algebra("2 1\n0 1 0 1 1 1 0 0 5\n"), AlgebraError);
  EXPECT_THROW(read_algebra("2 3\n0 1 0 1 1 1 0 0\n"), AlgebraError);
  EXPECT_THROW(read_algebra("x"), AlgebraError);
}

TEST(Order, CountsLabelledPosets) {
  // Number of labelled partial orders on 1..4 points.
  EXPECT_EQ(OrderRelation::all(1).size(), 1U);
  EXPECT_EQ(OrderRelation::all(2).size(), 3U);
  EXPECT_EQ(OrderRelation::all(3).size(), 19U);
  EXPECT_EQ(OrderRelation::all(4).size(), 219U);
}

TEST(Order, RejectsNonOrders) {
  EXPECT_THROW(OrderRelation(2, {0b01, 0b00}), AlgebraError);  // not reflexive
  EXPECT_THROW(OrderRelation(2, {0b11, 0b11}), AlgebraError);  // not antisymmetric
}

TEST(Order, SetOrder) {
  OrderRelation chain = OrderRelation::chain(3);
  EXPECT_TRUE(chain.leq(0, 2));
  EXPECT_FALSE(chain.leq(2, 0));
  EXPECT_TRUE(chain.set_leq(0b001, 0b100));
  EXPECT_FALSE(chain.set_leq(0b100, 0b011));
  EXPECT_TRUE(chain.set_leq(0, 0));
}

TEST(Order, OrderedAndComplete) {
  // A constant Pi is monotone in both arguments for every order.
  FiniteAlgebra constant(2, 0, std::vector<Element>(8, 1));
  for (const auto& order : OrderRelation::all(2)) EXPECT_TRUE(check_ordered(constant, order));
  // On the chain 0 <= 1, Pi(x, S) = 1 unless x = 1 and S misses 1: anti
  // monotone on the left, monotone on the right.
  FiniteAlgebra implication(2, 1, {1, 1, 1, 1, 0, 0, 1, 1});
  EXPECT_TRUE(check_ordered(implication, OrderRelation::chain(2)));
  FiniteAlgebra flipped(2, 1, {0, 0, 1, 1, 1, 1, 1, 1});
  EXPECT_FALSE(check_ordered(flipped, OrderRelation::chain(2)));
  EXPECT_TRUE(check_complete(constant, OrderRelation::chain(2)));
  EXPECT_FALSE(check_complete(constant, OrderRelation::discrete(2)));
}

}  // namespace
}  // namespace pimodulo
