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

#ifndef PIMODULO_TERM_HPP
#define PIMODULO_TERM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pimodulo {

/// Node kinds of the lambda-Pi syntax.
///
/// Bound variables are de Bruijn indices (`BVar`); variables of the ambient
/// context are named (`FVar`); signature entries are `Const`. Binders keep
/// their source name only as a printing hint.
enum class TermKind : std::uint8_t { BVar, FVar, Const, Type, Kind, Pi, Lam, App };

struct TermNode;

/// Immutable, shared term handle. Copying is cheap; equality is
/// alpha-equivalence (hints are ignored).
class Term {
 public:
  Term() = default;

  static Term bvar(std::uint32_t index);
  static Term fvar(std::string name);
  static Term constant(std::string name);
  static Term sort_type();
  static Term sort_kind();
  static Term pi(std::string hint, Term domain, Term body);
  static Term lam(std::string hint, Term annotation, Term body);
  static Term app(Term fn, Term arg);
  static Term app(Term fn, const std::vector<Term>& args);
  /// Non-dependent product `domain -> codomain`. The codomain is lifted so
  /// that it does not see the new binder.
  static Term arrow(Term domain, Term codomain);

  bool is_null() const { return node_ == nullptr; }
  explicit operator bool() const { return node_ != nullptr; }

  TermKind kind() const;
  bool is(TermKind k) const { return node_ && kind() == k; }
  bool is_sort() const { return is(TermKind::Type) || is(TermKind::Kind); }
  bool is_binder() const { return is(TermKind::Pi) || is(TermKind::Lam); }

  std::uint32_t index() const;
  /// Variable or constant name, or the binder hint for Pi/Lam.
  const std::string& name() const;

  /// Pi domain / Lam annotation.
  const Term& domain() const;
  /// Pi codomain / Lam body (index 0 refers to the binder).
  const Term& body() const;
  const Term& fn() const;
  const Term& arg() const;

  /// Child by position index (0 or 1) for Pi, Lam and App.
  const Term& child(std::size_t i) const;
  std::size_t arity() const;

  /// Number of nodes.
  std::uint32_t size() const;
  /// Structural hash, invariant under hint renaming.
  std::size_t hash() const;
  /// One past the largest loose de Bruijn index; 0 when locally closed.
  std::uint32_t loose_bound() const;
  bool is_locally_closed() const { return loose_bound() == 0; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind = TermKind::Type;
  std::uint32_t index = 0;
  std::string name;
  Term first;
  Term second;
  std::size_t hash = 0;
  std::uint32_t size = 1;
  std::uint32_t loose_bound = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Path of child indices from the root. Pi/Lam: 0 = domain, 1 = body;
/// App: 0 = function, 1 = argument.
using Position = std::vector<std::uint32_t>;

std::string position_to_string(const Position& pos);

bool alpha_eq(const Term& t, const Term& u);

/// Shift loose indices >= cutoff by `amount`.
Term lift(const Term& t, std::uint32_t amount, std::uint32_t cutoff = 0);

/// Replace the loose index 0 of a binder body by `value` (which may itself
/// contain loose indices; they are shifted as needed).
Term instantiate(const Term& body, const Term& value);

/// Turn free occurrences of `name` into the loose index 0, ready to be put
/// under a new binder.
Term abstract(const Term& t, const std::string& name);

/// Capture-avoiding (u/x)t.
Term substitute(const Term& t, const std::string& x, const Term& u);

/// Simultaneous substitution of several free variables.
Term substitute(const Term& t, const std::vector<std::pair<std::string, Term>>& bindings);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, const std::string& name);
/// True iff the loose index `index` occurs in t.
bool has_loose_bvar(const Term& t, std::uint32_t index);
std::set<std::string> constants_of(const Term& t);
bool mentions_constant(const Term& t, const std::string& name);

/// Preorder enumeration of every subterm occurrence.
std::vector<std::pair<Position, Term>> subterm_positions(const Term& t);
const Term& subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);

/// `f a1 ... an` split into head and arguments.
std::pair<Term, std::vector<Term>> spine(const Term& t);

}  // namespace pimodulo

template <>
struct std::hash<pimodulo::Term> {
  std::size_t operator()(const pimodulo::Term& t) const noexcept { return t.hash(); }
};

#endif  // PIMODULO_TERM_HPP
