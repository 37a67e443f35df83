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

#include "pimodulo/algebra.hpp"

#include <random>
#include <sstream>

namespace pimodulo {

SizeTooLargeForExhaustive::SizeTooLargeForExhaustive(unsigned n)
    : std::runtime_error("exhaustive enumeration of full algebras on " + std::to_string(n) +
                         " elements is too large; use sampling"),
      n_(n) {}

FiniteAlgebra::FiniteAlgebra(unsigned n, Element top, std::vector<Element> table)
    : n_(n), top_(top), table_(std::move(table)) {
  if (n == 0 || n > kMaxCarrier) {
    throw AlgebraError("carrier size must be between 1 and " + std::to_string(kMaxCarrier));
  }
  if (top >= n) throw AlgebraError("top element out of range");
  if (table_.size() != static_cast<std::size_t>(n) * subset_count()) {
    throw AlgebraError("Pi table must have n * 2^n entries");
  }
  for (Element v : table_) {
    if (v >= n) throw AlgebraError("Pi table entry out of range");
  }
}

OrderRelation::OrderRelation(unsigned n, std::vector<Subset> rows) : n_(n), rows_(std::move(rows)) {
  if (rows_.size() != n) throw AlgebraError("order needs one row per element");
  for (Element x = 0; x < n; ++x) {
    if (!leq(x, x)) throw AlgebraError("order is not reflexive");
    for (Element y = 0; y < n; ++y) {
      if (x != y && leq(x, y) && leq(y, x)) throw AlgebraError("order is not antisymmetric");
      for (Element z = 0; z < n; ++z) {
        if (leq(x, y) && leq(y, z) && !leq(x, z)) throw AlgebraError("order is not transitive");
      }
    }
  }
}

OrderRelation OrderRelation::discrete(unsigned n) {
  std::vector<Subset> rows(n);
  for (Element x = 0; x < n; ++x) rows[x] = Subset{1} << x;
  return OrderRelation(n, rows);
}

OrderRelation OrderRelation::chain(unsigned n) {
  std::vector<Subset> rows(n);
  const Subset all = (Subset{1} << n) - 1;
  for (Element x = 0; x < n; ++x) rows[x] = all & ~((Subset{1} << x) - 1);
  return OrderRelation(n, rows);
}

std::vector<OrderRelation> OrderRelation::all(unsigned n) {
  if (n > 4) throw AlgebraError("enumerating orders is limited to 4 elements");
  std::vector<OrderRelation> out;
  const unsigned off = n * n - n;
  for (std::uint32_t bits = 0; bits < (1U << off); ++bits) {
    std::vector<Subset> rows(n);
    unsigned k = 0;
    for (Element x = 0; x < n; ++x) {
      rows[x] |= Subset{1} << x;
      for (Element y = 0; y < n; ++y) {
        if (x == y) continue;
        if ((bits >> k++) & 1U) rows[x] |= Subset{1} << y;
      }
    }
    try {
      out.emplace_back(n, rows);
    } catch (const AlgebraError&) {
    }
  }
  return out;
}

bool OrderRelation::set_leq(Subset s, Subset t) const {
  for (Element y = 0; y < n_; ++y) {
    if (!((s >> y) & 1U)) continue;
    if ((rows_[y] & t) == 0) return false;
  }
  return true;
}

bool check_ordered(const FiniteAlgebra& alg, const OrderRelation& order) {
  const unsigned n = alg.n();
  if (order.n() != n) throw AlgebraError("order and algebra sizes differ");
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!order.leq(x, y)) continue;
      for (Subset s = 0; s < alg.subset_count(); ++s) {
        if (!order.leq(alg.pi(y, s), alg.pi(x, s))) return false;
      }
    }
  }
  for (Subset s = 0; s < alg.subset_count(); ++s) {
    for (Subset t = 0; t < alg.subset_count(); ++t) {
      if (!order.set_leq(s, t)) continue;
      for (Element x = 0; x < n; ++x) {
        if (!order.leq(alg.pi(x, s), alg.pi(x, t))) return false;
      }
    }
  }
  return true;
}

bool check_complete(const FiniteAlgebra& alg, const OrderRelation& order) {
  const unsigned n = alg.n();
  if (order.n() != n) throw AlgebraError("order and algebra sizes differ");
  for (Subset s = 0; s < alg.subset_count(); ++s) {
    Subset upper = 0;
    for (Element u = 0; u < n; ++u) {
      bool bound = true;
      for (Element y = 0; y < n && bound; ++y) bound = !((s >> y) & 1U) || order.leq(y, u);
      if (bound) upper |= Subset{1} << u;
    }
    bool has_least = false;
    for (Element u = 0; u < n && !has_least; ++u) {
      if (!((upper >> u) & 1U)) continue;
      has_least = (order.rows()[u] & upper) == upper;
    }
    if (!has_least) return false;
  }
  return true;
}

std::uint64_t full_algebra_count(unsigned n) {
  if (n == 0 || n > 2) throw SizeTooLargeForExhaustive(n);
  std::uint64_t count = n;
  const unsigned entries = n * (1U << n);
  for (unsigned i = 0; i < entries; ++i) count *= n;
  return count;
}

AlgebraEnumerator::AlgebraEnumerator(unsigned n) : n_(n), count_(full_algebra_count(n)) {}

FiniteAlgebra AlgebraEnumerator::at(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("algebra index out of range");
  const Element top = static_cast<Element>(index % n_);
  index /= n_;
  std::vector<Element> table(n_ * (std::size_t{1} << n_));
  for (Element& v : table) {
    v = static_cast<Element>(index % n_);
    index /= n_;
  }
  return FiniteAlgebra(n_, top, std::move(table));
}

std::vector<FiniteAlgebra> enumerate_full_algebras(unsigned n) {
  AlgebraEnumerator e(n);
  std::vector<FiniteAlgebra> out;
  out.reserve(e.size());
  for (std::uint64_t i = 0; i < e.size(); ++i) out.push_back(e.at(i));
  return out;
}

std::vector<FiniteAlgebra> sample_full_algebras(unsigned n, std::size_t count, std::uint64_t seed) {
  if (n == 0 || n > kMaxCarrier) throw AlgebraError("carrier size out of range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> pick(0, n - 1);
  std::vector<FiniteAlgebra> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Element top = pick(rng);
    std::vector<Element> table(n * (std::size_t{1} << n));
    for (Element& v : table) v = pick(rng);
    out.emplace_back(n, top, std::move(table));
  }
  return out;
}

FiniteAlgebra read_algebra(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  long long top = 0;
  if (!(in >> n >> top)) throw AlgebraError("expected `n top` header");
  if (n <= 0 || n > static_cast<long long>(kMaxCarrier)) throw AlgebraError("bad carrier size");
  std::vector<Element> table;
  const std::size_t entries = static_cast<std::size_t>(n) << n;
  table.reserve(entries);
  long long v = 0;
  while (table.size() < entries && in >> v) {
    if (v < 0 || v >= n) throw AlgebraError("table entry out of range");
    table.push_back(static_cast<Element>(v));
  }
  if (table.size() != entries) throw AlgebraError("expected n * 2^n table entries");
  std::string rest;
  if (in >> rest) throw AlgebraError("trailing data after table");
  if (top < 0 || top >= n) throw AlgebraError("top element out of range");
  return FiniteAlgebra(static_cast<unsigned>(n), static_cast<Element>(top), std::move(table));
}

std::string write_algebra(const FiniteAlgebra& alg) {
  std::string out = std::to_string(alg.n()) + " " + std::to_string(alg.top()) + "\n";
  for (Element x = 0; x < alg.n(); ++x) {
    for (Subset s = 0; s < alg.subset_count(); ++s) {
      if (s) out += ' ';
      out += std::to_string(alg.pi(x, s));
    }
    out += '\n';
  }
  return out;
}

}  // namespace pimodulo
