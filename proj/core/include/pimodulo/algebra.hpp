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

#ifndef PIMODULO_ALGEBRA_HPP
#define PIMODULO_ALGEBRA_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pimodulo {

using Element = std::uint32_t;
/// Subset of the carrier; bit i stands for element i.
using Subset = std::uint32_t;

/// Largest carrier the bitmask representation supports.
inline constexpr unsigned kMaxCarrier = 12;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeTooLargeForExhaustive : public std::runtime_error {
 public:
  explicit SizeTooLargeForExhaustive(unsigned n);
  unsigned n() const { return n_; }

 private:
  unsigned n_;
};

/// Full Pi-algebra on the carrier {0, ..., n-1}: a distinguished element and
/// a total table for Pi over (element, subset) pairs, empty subset included.
class FiniteAlgebra {
 public:
  /// `table[x * 2^n + S]` is Pi(x, S). Throws AlgebraError when sizes or
  /// entries are out of range.
  FiniteAlgebra(unsigned n, Element top, std::vector<Element> table);

  unsigned n() const { return n_; }
  Element top() const { return top_; }
  Subset subset_count() const { return Subset{1} << n_; }
  Subset full_subset() const { return subset_count() - 1; }

  Element pi(Element x, Subset s) const { return table_[x * subset_count() + s]; }
  /// w ~> w', that is Pi(w, {w'}).
  Element arrow(Element w, Element w2) const { return pi(w, Subset{1} << w2); }

  const std::vector<Element>& table() const { return table_; }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.n_ == b.n_ && a.top_ == b.top_ && a.table_ == b.table_;
  }

 private:
  unsigned n_;
  Element top_;
  std::vector<Element> table_;
};

/// Partial order on the carrier as a bit matrix: bit y of row x is x <= y.
class OrderRelation {
 public:
  /// Throws AlgebraError unless the relation is reflexive, antisymmetric and
  /// transitive.
  OrderRelation(unsigned n, std::vector<Subset> rows);

  static OrderRelation discrete(unsigned n);
  /// 0 <= 1 <= ... <= n-1.
  static OrderRelation chain(unsigned n);
  /// Every partial order on n elements (labelled), n <= 4.
  static std::vector<OrderRelation> all(unsigned n);

  unsigned n() const { return n_; }
  bool leq(Element x, Element y) const { return (rows_[x] >> y) & 1U; }
  /// Subset order: every y in S lies below some z in T.
  bool set_leq(Subset s, Subset t) const;
  const std::vector<Subset>& rows() const { return rows_; }

 private:
  unsigned n_;
  std::vector<Subset> rows_;
};

/// Left anti-monotone and right monotone Pi.
bool check_ordered(const FiniteAlgebra& alg, const OrderRelation& order);

/// Every subset, the empty one included, has a least upper bound.
bool check_complete(const FiniteAlgebra& alg, const OrderRelation& order);

/// Number of full algebras on n elements, n^(n * 2^n) * n. Throws
/// SizeTooLargeForExhaustive when it does not fit the exhaustive mode.
std::uint64_t full_algebra_count(unsigned n);

/// Indexable enumeration of every full algebra on n <= 2 elements. Index
/// i encodes the top as i mod n and the table digits base n.
class AlgebraEnumerator {
 public:
  explicit AlgebraEnumerator(unsigned n);

  std::uint64_t size() const { return count_; }
  FiniteAlgebra at(std::uint64_t index) const;

 private:
  unsigned n_;
  std::uint64_t count_;
};

std::vector<FiniteAlgebra> enumerate_full_algebras(unsigned n);

/// `count` algebras drawn uniformly with a seeded generator.
std::vector<FiniteAlgebra> sample_full_algebras(unsigned n, std::size_t count,
                                                std::uint64_t seed);

/// `.alg` text: a line `n top`, then one line per element x with the 2^n
/// entries Pi(x, S) in bitmask order.
FiniteAlgebra read_algebra(std::string_view text);
std::string write_algebra(const FiniteAlgebra& alg);

}  // namespace pimodulo

#endif  // PIMODULO_ALGEBRA_HPP
