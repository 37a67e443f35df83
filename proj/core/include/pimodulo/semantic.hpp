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

#ifndef PIMODULO_SEMANTIC_HPP
#define PIMODULO_SEMANTIC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pimodulo/algebra.hpp"

// Finite semantic values shared by the STT and CC models: sets built from
// the carrier B, the one-point set {e}, function spaces and unions, plus a
// symbolic marker for the universe E of the CC model.
namespace pimodulo::semantic {

inline constexpr std::size_t kDefaultCardinalityCap = 1'000'000;

class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeLimitExceeded : public SemanticError {
 public:
  explicit SizeLimitExceeded(std::size_t cap);
};

/// A union (or enumeration) over the universe E was demanded.
class UnenumerableUnion : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

enum class SetKind { Carrier, Singleton, FunSpace, Union, Universe, Explicit };
enum class ValueKind { Elem, E, Table, SetElem, Function };

struct SetNode;
struct ValueNode;
class Value;

class Set {
 public:
  Set() = default;

  static Set carrier(unsigned n);
  static Set singleton();
  /// Marker for the universe E built over a carrier of size n.
  static Set universe(unsigned n);
  /// Collapses to {e} when `cod` is {e}.
  static Set fun_space(Set dom, Set cod);
  /// Flattens nested unions and drops duplicates; a single member is
  /// returned as is.
  static Set union_of(const std::vector<Set>& members);
  static Set explicit_set(const std::vector<Value>& elements);

  SetKind kind() const;
  bool is(SetKind k) const { return node_ && kind() == k; }
  bool is_null() const { return !node_; }
  unsigned n() const;  // Carrier, Universe
  const Set& domain() const;  // FunSpace
  const Set& codomain() const;  // FunSpace
  const std::vector<Set>& members() const;  // Union
  const std::vector<Value>& elements() const;  // Explicit
  std::size_t hash() const;
  bool same_node(const Set& o) const { return node_ == o.node_; }

  std::string to_string() const;

 private:
  explicit Set(std::shared_ptr<const SetNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SetNode> node_;
};

using Callable = std::function<Value(const Value&)>;

class Value {
 public:
  Value() = default;

  static Value elem(Element x);
  static Value e();
  static Value set(Set s);
  /// Finite function given by its outputs on `enumerate(domain)`. Collapses
  /// to e when every output is e.
  static Value table(Set domain, std::vector<Value> outputs);
  /// Same with `keys == enumerate(domain)` already computed.
  static Value table(Set domain, std::vector<Value> keys, std::vector<Value> outputs);
  /// Opaque function, for domains that cannot be tabulated. `label` and
  /// `captured` identify it for printing and fast equality.
  static Value function(Set domain, std::string label, std::vector<Value> captured, Callable fn);

  ValueKind kind() const;
  bool is(ValueKind k) const { return node_ && kind() == k; }
  bool is_null() const { return !node_; }
  bool is_e() const { return is(ValueKind::E); }
  Element element() const;  // Elem
  const Set& as_set() const;  // SetElem
  const Set& domain() const;  // Table, Function
  const std::vector<Value>& keys() const;  // Table
  const std::vector<Value>& outputs() const;  // Table
  const std::string& label() const;  // Function
  const std::vector<Value>& captured() const;  // Function
  const Callable& callable() const;  // Function
  bool same_node(const Value& o) const { return node_ == o.node_; }

  std::string to_string() const;

 private:
  explicit Value(std::shared_ptr<const ValueNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ValueNode> node_;
};

struct SetNode {
  SetKind kind = SetKind::Singleton;
  unsigned n = 0;
  Set first;
  Set second;
  std::vector<Set> members;
  std::vector<Value> elements;
  std::size_t hash = 0;
};

struct ValueNode {
  ValueKind kind = ValueKind::E;
  Element element = 0;
  Set set;  // SetElem payload, or the domain of a function
  std::vector<Value> keys;
  std::vector<Value> outputs;
  std::string label;
  std::vector<Value> captured;
  Callable fn;
};

/// Whether the set has a finite enumeration (no universe inside).
bool enumerable(const Set& s);

/// Number of elements, or throws SizeLimitExceeded above `cap`.
std::size_t cardinality(const Set& s, std::size_t cap = kDefaultCardinalityCap);

/// Complete duplicate-free enumeration. Throws UnenumerableUnion for sets
/// involving E and SizeLimitExceeded above `cap`.
std::vector<Value> enumerate(const Set& s, std::size_t cap = kDefaultCardinalityCap);

/// Enumeration when it fits under `cap`, else a fixed sample: for E the
/// sets B, {e}, B -> B and {e} -> B, for function spaces constant
/// functions.
std::vector<Value> probe_elements(const Set& s, std::size_t cap = 4096);

/// Extensional equality. Functions over non-enumerable domains are compared
/// on probe elements.
bool equal(const Set& a, const Set& b);
bool equal(const Value& a, const Value& b);

bool contains(const Set& s, const Value& v);

/// Application; e applied to anything is e.
Value apply(const Value& f, const Value& arg);

/// e on {e}, element 0 on B, the set B on E, constant functions on
/// function spaces.
Value default_element(const Set& s);

/// The identity on `s` (a table when `s` enumerates).
Value identity_on(const Set& s, const std::string& label = "id");

/// Assignment of values to context variables.
using Valuation = std::map<std::string, Value>;

/// Every combination picking one entry per row when there are at most
/// `limit`, else `limit` combinations drawn with a seeded generator.
std::vector<std::vector<Value>> product_or_sample(const std::vector<std::vector<Value>>& rows,
                                                  std::size_t limit, std::uint64_t seed);

}  // namespace pimodulo::semantic

#endif  // PIMODULO_SEMANTIC_HPP
