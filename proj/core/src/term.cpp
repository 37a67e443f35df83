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

#include "pimodulo/term.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pimodulo {
namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::bvar(std::uint32_t index) {
  TermNode n;
  n.kind = TermKind::BVar;
  n.index = index;
  n.loose_bound = index + 1;
  n.hash = mix(1, index);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::fvar(std::string name) {
  TermNode n;
  n.kind = TermKind::FVar;
  n.hash = mix(2, std::hash<std::string>{}(name));
  n.name = std::move(name);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::constant(std::string name) {
  TermNode n;
  n.kind = TermKind::Const;
  n.hash = mix(3, std::hash<std::string>{}(name));
  n.name = std::move(name);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::sort_type() {
  static const Term t = [] {
    TermNode n;
    n.kind = TermKind::Type;
    n.hash = 4;
    return Term(std::make_shared<const TermNode>(std::move(n)));
  }();
  return t;
}

Term Term::sort_kind() {
  static const Term t = [] {
    TermNode n;
    n.kind = TermKind::Kind;
    n.hash = 5;
    return Term(std::make_shared<const TermNode>(std::move(n)));
  }();
  return t;
}

namespace {

TermNode binary(TermKind kind, Term a, Term b, bool binds) {
  assert(a && b);
  TermNode n;
  n.kind = kind;
  n.size = 1 + a.size() + b.size();
  std::uint32_t body_bound = b.loose_bound();
  if (binds) body_bound = body_bound > 0 ? body_bound - 1 : 0;
  n.loose_bound = std::max(a.loose_bound(), body_bound);
  n.hash = mix(mix(static_cast<std::size_t>(kind) + 16, a.hash()), b.hash());
  n.first = std::move(a);
  n.second = std::move(b);
  return n;
}

}  // namespace

Term Term::pi(std::string hint, Term domain, Term body) {
  TermNode n = binary(TermKind::Pi, std::move(domain), std::move(body), true);
  n.name = std::move(hint);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::lam(std::string hint, Term annotation, Term body) {
  TermNode n = binary(TermKind::Lam, std::move(annotation), std::move(body), true);
  n.name = std::move(hint);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::app(Term fn, Term arg) {
  TermNode n = binary(TermKind::App, std::move(fn), std::move(arg), false);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::app(Term fn, const std::vector<Term>& args) {
  for (const Term& a : args) fn = app(std::move(fn), a);
  return fn;
}

Term Term::arrow(Term domain, Term codomain) {
  return pi("", std::move(domain), lift(codomain, 1));
}

TermKind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::domain() const { return node_->first; }
const Term& Term::body() const { return node_->second; }
const Term& Term::fn() const { return node_->first; }
const Term& Term::arg() const { return node_->second; }

const Term& Term::child(std::size_t i) const {
  if (arity() <= i) throw std::out_of_range("term has no child " + std::to_string(i));
  return i == 0 ? node_->first : node_->second;
}

std::size_t Term::arity() const {
  switch (kind()) {
    case TermKind::Pi:
    case TermKind::Lam:
    case TermKind::App:
      return 2;
    default:
      return 0;
  }
}

std::uint32_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }
std::uint32_t Term::loose_bound() const { return node_->loose_bound; }

bool operator==(const Term& a, const Term& b) { return alpha_eq(a, b); }

std::string position_to_string(const Position& pos) {
  if (pos.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(pos[i]);
  }
  return s;
}

bool alpha_eq(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  if (t.is_null() || u.is_null()) return false;
  if (t.hash() != u.hash() || t.size() != u.size() || t.kind() != u.kind()) return false;
  switch (t.kind()) {
    case TermKind::BVar:
      return t.index() == u.index();
    case TermKind::FVar:
    case TermKind::Const:
      return t.name() == u.name();
    case TermKind::Type:
    case TermKind::Kind:
      return true;
    case TermKind::Pi:
    case TermKind::Lam:
    case TermKind::App:
      return alpha_eq(t.child(0), u.child(0)) && alpha_eq(t.child(1), u.child(1));
  }
  return false;
}

namespace {

Term rebuild(const Term& t, Term a, Term b) {
  if (a.same_node(t.child(0)) && b.same_node(t.child(1))) return t;
  switch (t.kind()) {
    case TermKind::Pi:
      return Term::pi(t.name(), std::move(a), std::move(b));
    case TermKind::Lam:
      return Term::lam(t.name(), std::move(a), std::move(b));
    default:
      return Term::app(std::move(a), std::move(b));
  }
}

std::uint32_t depth_for_child(const Term& t, std::size_t i, std::uint32_t depth) {
  return (t.is_binder() && i == 1) ? depth + 1 : depth;
}

Term lift_at(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (t.loose_bound() <= cutoff) return t;
  if (t.is(TermKind::BVar)) return Term::bvar(t.index() + amount);
  return rebuild(t, lift_at(t.child(0), amount, cutoff),
                 lift_at(t.child(1), amount, depth_for_child(t, 1, cutoff)));
}

Term instantiate_at(const Term& t, const Term& value, std::uint32_t depth) {
  if (t.loose_bound() <= depth) return t;
  if (t.is(TermKind::BVar)) {
    if (t.index() == depth) return lift_at(value, depth, 0);
    return Term::bvar(t.index() - 1);
  }
  return rebuild(t, instantiate_at(t.child(0), value, depth),
                 instantiate_at(t.child(1), value, depth_for_child(t, 1, depth)));
}

Term abstract_at(const Term& t, const std::string& name, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::FVar:
      return t.name() == name ? Term::bvar(depth) : t;
    case TermKind::BVar:
      return t.index() >= depth ? Term::bvar(t.index() + 1) : t;
    case TermKind::Const:
    case TermKind::Type:
    case TermKind::Kind:
      return t;
    default:
      return rebuild(t, abstract_at(t.child(0), name, depth),
                     abstract_at(t.child(1), name, depth_for_child(t, 1, depth)));
  }
}

Term substitute_at(const Term& t, const std::vector<std::pair<std::string, Term>>& bindings,
                   std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::FVar:
      for (const auto& [x, u] : bindings) {
        if (x == t.name()) return lift_at(u, depth, 0);
      }
      return t;
    case TermKind::BVar:
    case TermKind::Const:
    case TermKind::Type:
    case TermKind::Kind:
      return t;
    default:
      return rebuild(t, substitute_at(t.child(0), bindings, depth),
                     substitute_at(t.child(1), bindings, depth_for_child(t, 1, depth)));
  }
}

void collect_free(const Term& t, std::set<std::string>& out, TermKind which) {
  if (t.is(which)) {
    out.insert(t.name());
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_free(t.child(i), out, which);
}

bool has_loose_at(const Term& t, std::uint32_t index) {
  if (t.loose_bound() <= index) return false;
  if (t.is(TermKind::BVar)) return t.index() == index;
  return has_loose_at(t.child(0), index) || has_loose_at(t.child(1), t.is_binder() ? index + 1 : index);
}

bool mentions(const Term& t, const std::string& name, TermKind which) {
  if (t.is(which)) return t.name() == name;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (mentions(t.child(i), name, which)) return true;
  }
  return false;
}

void walk(const Term& t, Position& pos, std::vector<std::pair<Position, Term>>& out) {
  out.emplace_back(pos, t);
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    pos.push_back(i);
    walk(t.child(i), pos, out);
    pos.pop_back();
  }
}

Term replace_from(const Term& t, const Position& pos, std::size_t k, const Term& replacement) {
  if (k == pos.size()) return replacement;
  Term a = t.child(0);
  Term b = t.child(1);
  if (pos[k] == 0) {
    a = replace_from(a, pos, k + 1, replacement);
  } else {
    b = replace_from(b, pos, k + 1, replacement);
  }
  return rebuild(t, std::move(a), std::move(b));
}

}  // namespace

Term lift(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (amount == 0) return t;
  return lift_at(t, amount, cutoff);
}

Term instantiate(const Term& body, const Term& value) { return instantiate_at(body, value, 0); }

Term abstract(const Term& t, const std::string& name) { return abstract_at(t, name, 0); }

Term substitute(const Term& t, const std::string& x, const Term& u) {
  return substitute_at(t, {{x, u}}, 0);
}

Term substitute(const Term& t, const std::vector<std::pair<std::string, Term>>& bindings) {
  if (bindings.empty()) return t;
  return substitute_at(t, bindings, 0);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out, TermKind::FVar);
  return out;
}

bool occurs_free(const Term& t, const std::string& name) { return mentions(t, name, TermKind::FVar); }

bool has_loose_bvar(const Term& t, std::uint32_t index) { return has_loose_at(t, index); }

std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out, TermKind::Const);
  return out;
}

bool mentions_constant(const Term& t, const std::string& name) {
  return mentions(t, name, TermKind::Const);
}

std::vector<std::pair<Position, Term>> subterm_positions(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  Position pos;
  walk(t, pos, out);
  return out;
}

const Term& subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (std::uint32_t i : pos) cur = &cur->child(i);
  return *cur;
}

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  return replace_from(t, pos, 0, replacement);
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term head = t;
  while (head.is(TermKind::App)) {
    args.push_back(head.arg());
    head = head.fn();
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

}  // namespace pimodulo
