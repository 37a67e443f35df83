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

#include "pimodulo/semantic.hpp"

#include <algorithm>
#include <random>

namespace pimodulo::semantic {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

SizeLimitExceeded::SizeLimitExceeded(std::size_t cap)
    : SemanticError("semantic set larger than the cardinality cap " + std::to_string(cap)) {}

// Sets ------------------------------------------------------------------------

Set Set::carrier(unsigned n) {
  SetNode node;
  node.kind = SetKind::Carrier;
  node.n = n;
  node.hash = mix(1, n);
  return Set(std::make_shared<const SetNode>(std::move(node)));
}

Set Set::singleton() {
  static const Set s = [] {
    SetNode node;
    node.kind = SetKind::Singleton;
    node.hash = 2;
    return Set(std::make_shared<const SetNode>(std::move(node)));
  }();
  return s;
}

Set Set::universe(unsigned n) {
  SetNode node;
  node.kind = SetKind::Universe;
  node.n = n;
  node.hash = mix(3, n);
  return Set(std::make_shared<const SetNode>(std::move(node)));
}

Set Set::fun_space(Set dom, Set cod) {
  if (cod.is(SetKind::Singleton)) return cod;
  SetNode node;
  node.kind = SetKind::FunSpace;
  node.hash = mix(mix(4, dom.hash()), cod.hash());
  node.first = std::move(dom);
  node.second = std::move(cod);
  return Set(std::make_shared<const SetNode>(std::move(node)));
}

Set Set::union_of(const std::vector<Set>& members) {
  std::vector<Set> flat;
  auto add = [&flat](const Set& s) {
    for (const Set& m : flat) {
      if (equal(m, s)) return;
    }
    flat.push_back(s);
  };
  for (const Set& m : members) {
    if (m.is(SetKind::Union)) {
      for (const Set& inner : m.members()) add(inner);
    } else {
      add(m);
    }
  }
  if (flat.empty()) return explicit_set({});
  if (flat.size() == 1) return flat.front();
  std::stable_sort(flat.begin(), flat.end(),
                   [](const Set& a, const Set& b) { return a.hash() < b.hash(); });
  SetNode node;
  node.kind = SetKind::Union;
  node.hash = 5;
  for (const Set& m : flat) node.hash = mix(node.hash, m.hash());
  node.members = std::move(flat);
  return Set(std::make_shared<const SetNode>(std::move(node)));
}

Set Set::explicit_set(const std::vector<Value>& elements) {
  SetNode node;
  node.kind = SetKind::Explicit;
  node.hash = mix(6, elements.size());
  for (const Value& v : elements) {
    bool seen = false;
    for (const Value& w : node.elements) seen = seen || equal(v, w);
    if (!seen) node.elements.push_back(v);
  }
  return Set(std::make_shared<const SetNode>(std::move(node)));
}

SetKind Set::kind() const { return node_->kind; }
unsigned Set::n() const { return node_->n; }
const Set& Set::domain() const { return node_->first; }
const Set& Set::codomain() const { return node_->second; }
const std::vector<Set>& Set::members() const { return node_->members; }
const std::vector<Value>& Set::elements() const { return node_->elements; }
std::size_t Set::hash() const { return node_ ? node_->hash : 0; }

std::string Set::to_string() const {
  if (!node_) return "<null>";
  switch (kind()) {
    case SetKind::Carrier:
      return "B";
    case SetKind::Singleton:
      return "{e}";
    case SetKind::Universe:
      return "E";
    case SetKind::FunSpace:
      return "(" + domain().to_string() + " => " + codomain().to_string() + ")";
    case SetKind::Union: {
      std::string s = "(";
      for (std::size_t i = 0; i < members().size(); ++i) {
        if (i) s += " U ";
        s += members()[i].to_string();
      }
      return s + ")";
    }
    case SetKind::Explicit: {
      std::string s = "{";
      for (std::size_t i = 0; i < elements().size(); ++i) {
        if (i) s += ", ";
        s += elements()[i].to_string();
      }
      return s + "}";
    }
  }
  return "?";
}

// Values ----------------------------------------------------------------------

Value Value::elem(Element x) {
  ValueNode node;
  node.kind = ValueKind::Elem;
  node.element = x;
  return Value(std::make_shared<const ValueNode>(std::move(node)));
}

Value Value::e() {
  static const Value v = [] {
    ValueNode node;
    node.kind = ValueKind::E;
    return Value(std::make_shared<const ValueNode>(std::move(node)));
  }();
  return v;
}

Value Value::set(Set s) {
  ValueNode node;
  node.kind = ValueKind::SetElem;
  node.set = std::move(s);
  return Value(std::make_shared<const ValueNode>(std::move(node)));
}

Value Value::table(Set domain, std::vector<Value> outputs) {
  std::vector<Value> keys = enumerate(domain);
  return table(std::move(domain), std::move(keys), std::move(outputs));
}

Value Value::table(Set domain, std::vector<Value> keys, std::vector<Value> outputs) {
  if (keys.size() != outputs.size()) throw SemanticError("table size does not match its domain");
  if (!outputs.empty() &&
      std::all_of(outputs.begin(), outputs.end(), [](const Value& v) { return v.is_e(); })) {
    return e();
  }
  ValueNode node;
  node.kind = ValueKind::Table;
  node.set = std::move(domain);
  node.keys = std::move(keys);
  node.outputs = std::move(outputs);
  return Value(std::make_shared<const ValueNode>(std::move(node)));
}

Value Value::function(Set domain, std::string label, std::vector<Value> captured, Callable fn) {
  ValueNode node;
  node.kind = ValueKind::Function;
  node.set = std::move(domain);
  node.label = std::move(label);
  node.captured = std::move(captured);
  node.fn = std::move(fn);
  return Value(std::make_shared<const ValueNode>(std::move(node)));
}

ValueKind Value::kind() const { return node_->kind; }
Element Value::element() const { return node_->element; }
const Set& Value::as_set() const { return node_->set; }
const Set& Value::domain() const { return node_->set; }
const std::vector<Value>& Value::keys() const { return node_->keys; }
const std::vector<Value>& Value::outputs() const { return node_->outputs; }
const std::string& Value::label() const { return node_->label; }
const std::vector<Value>& Value::captured() const { return node_->captured; }
const Callable& Value::callable() const { return node_->fn; }

std::string Value::to_string() const {
  if (!node_) return "<null>";
  switch (kind()) {
    case ValueKind::Elem:
      return std::to_string(element());
    case ValueKind::E:
      return "e";
    case ValueKind::SetElem:
      return as_set().to_string();
    case ValueKind::Table: {
      std::string s = "[";
      for (std::size_t i = 0; i < keys().size(); ++i) {
        if (i) s += ", ";
        s += keys()[i].to_string() + " |-> " + outputs()[i].to_string();
      }
      return s + "]";
    }
    case ValueKind::Function: {
      std::string s = "<" + label();
      for (const Value& c : captured()) s += " " + c.to_string();
      return s + ">";
    }
  }
  return "?";
}

// Operations ------------------------------------------------------------------

bool enumerable(const Set& s) {
  switch (s.kind()) {
    case SetKind::Carrier:
    case SetKind::Singleton:
    case SetKind::Explicit:
      return true;
    case SetKind::Universe:
      return false;
    case SetKind::FunSpace:
      return enumerable(s.domain()) && enumerable(s.codomain());
    case SetKind::Union:
      return std::all_of(s.members().begin(), s.members().end(),
                         [](const Set& m) { return enumerable(m); });
  }
  return false;
}

std::size_t cardinality(const Set& s, std::size_t cap) {
  switch (s.kind()) {
    case SetKind::Carrier:
      if (s.n() > cap) throw SizeLimitExceeded(cap);
      return s.n();
    case SetKind::Singleton:
      return 1;
    case SetKind::Explicit:
      return s.elements().size();
    case SetKind::Universe:
      throw UnenumerableUnion("the universe E cannot be enumerated");
    case SetKind::FunSpace: {
      const std::size_t d = cardinality(s.domain(), cap);
      const std::size_t c = cardinality(s.codomain(), cap);
      std::size_t total = 1;
      for (std::size_t i = 0; i < d; ++i) {
        if (c != 0 && total > cap / c) throw SizeLimitExceeded(cap);
        total *= c;
      }
      if (total > cap) throw SizeLimitExceeded(cap);
      return total;
    }
    case SetKind::Union:
      return enumerate(s, cap).size();
  }
  return 0;
}

std::vector<Value> enumerate(const Set& s, std::size_t cap) {
  switch (s.kind()) {
    case SetKind::Carrier: {
      if (s.n() > cap) throw SizeLimitExceeded(cap);
      std::vector<Value> out;
      for (Element x = 0; x < s.n(); ++x) out.push_back(Value::elem(x));
      return out;
    }
    case SetKind::Singleton:
      return {Value::e()};
    case SetKind::Explicit:
      return s.elements();
    case SetKind::Universe:
      throw UnenumerableUnion("the universe E cannot be enumerated");
    case SetKind::FunSpace: {
      cardinality(s, cap);
      std::vector<Value> keys = enumerate(s.domain(), cap);
      std::vector<Value> cod = enumerate(s.codomain(), cap);
      std::vector<Value> out;
      if (cod.empty() && !keys.empty()) return out;
      std::vector<std::size_t> digits(keys.size(), 0);
      while (true) {
        std::vector<Value> outputs;
        outputs.reserve(keys.size());
        for (std::size_t d : digits) outputs.push_back(cod[d]);
        out.push_back(Value::table(s.domain(), keys, std::move(outputs)));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == cod.size()) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      return out;
    }
    case SetKind::Union: {
      std::vector<Value> out;
      for (const Set& m : s.members()) {
        for (const Value& v : enumerate(m, cap)) {
          bool seen = false;
          for (const Value& w : out) {
            if (equal(v, w)) {
              seen = true;
              break;
            }
          }
          if (!seen) out.push_back(v);
          if (out.size() > cap) throw SizeLimitExceeded(cap);
        }
      }
      return out;
    }
  }
  return {};
}

namespace {

bool fits(const Set& s, std::size_t cap) {
  if (!enumerable(s)) return false;
  try {
    cardinality(s, cap);
    return true;
  } catch (const SizeLimitExceeded&) {
    return false;
  }
}

Value constant_function(const Set& dom, const Value& c) {
  if (fits(dom, 4096)) {
    std::vector<Value> keys = enumerate(dom);
    std::vector<Value> outputs(keys.size(), c);
    return Value::table(dom, std::move(keys), std::move(outputs));
  }
  return Value::function(dom, "const", {c}, [c](const Value&) { return c; });
}

}  // namespace

std::vector<Value> probe_elements(const Set& s, std::size_t cap) {
  if (fits(s, cap)) return enumerate(s, cap);
  switch (s.kind()) {
    case SetKind::Universe: {
      const Set b = Set::carrier(s.n());
      const Set one = Set::singleton();
      return {Value::set(b), Value::set(one), Value::set(Set::fun_space(b, b)),
              Value::set(Set::fun_space(one, b))};
    }
    case SetKind::FunSpace: {
      std::vector<Value> out;
      for (const Value& c : probe_elements(s.codomain(), cap)) {
        out.push_back(constant_function(s.domain(), c));
      }
      if (equal(s.domain(), s.codomain())) out.push_back(identity_on(s.domain()));
      return out;
    }
    case SetKind::Union: {
      std::vector<Value> out;
      for (const Set& m : s.members()) {
        for (const Value& v : probe_elements(m, cap)) out.push_back(v);
      }
      return out;
    }
    default:
      throw SizeLimitExceeded(cap);
  }
}

bool equal(const Set& a, const Set& b) {
  if (a.is_null() || b.is_null()) return a.is_null() && b.is_null();
  if (a.same_node(b)) return true;
  if (a.is(SetKind::Universe) || b.is(SetKind::Universe)) {
    return a.kind() == b.kind() && a.n() == b.n();
  }
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
      case SetKind::Carrier:
        return a.n() == b.n();
      case SetKind::Singleton:
        return true;
      case SetKind::FunSpace:
        return equal(a.domain(), b.domain()) && equal(a.codomain(), b.codomain());
      default:
        break;
    }
  }
  if (!enumerable(a) || !enumerable(b)) {
    if (a.is(SetKind::Union) && b.is(SetKind::Union) &&
        a.members().size() == b.members().size()) {
      for (const Set& m : a.members()) {
        bool found = false;
        for (const Set& k : b.members()) found = found || equal(m, k);
        if (!found) return false;
      }
      return true;
    }
    return false;
  }
  std::vector<Value> xs = enumerate(a);
  std::vector<Value> ys = enumerate(b);
  if (xs.size() != ys.size()) return false;
  for (const Value& x : xs) {
    bool found = false;
    for (const Value& y : ys) {
      if (equal(x, y)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

bool function_like(const Value& v) { return v.is(ValueKind::Table) || v.is(ValueKind::Function); }

bool same_captures(const Value& a, const Value& b) {
  // Unlabelled functions are closures; only probing can compare them.
  if (a.label().empty() || a.label() != b.label()) return false;
  if (a.captured().size() != b.captured().size()) return false;
  for (std::size_t i = 0; i < a.captured().size(); ++i) {
    if (!equal(a.captured()[i], b.captured()[i])) return false;
  }
  return true;
}

}  // namespace

bool equal(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return a.is_null() && b.is_null();
  if (a.same_node(b)) return true;
  if (function_like(a) && function_like(b)) {
    if (a.is(ValueKind::Function) && b.is(ValueKind::Function) && same_captures(a, b) &&
        equal(a.domain(), b.domain())) {
      return true;
    }
    if (!equal(a.domain(), b.domain())) return false;
    const std::vector<Value>& keys =
        a.is(ValueKind::Table) ? a.keys() : (b.is(ValueKind::Table) ? b.keys() : probe_elements(a.domain()));
    for (const Value& k : keys) {
      if (!equal(apply(a, k), apply(b, k))) return false;
    }
    return true;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueKind::Elem:
      return a.element() == b.element();
    case ValueKind::E:
      return true;
    case ValueKind::SetElem:
      return equal(a.as_set(), b.as_set());
    default:
      return false;
  }
}

bool contains(const Set& s, const Value& v) {
  switch (s.kind()) {
    case SetKind::Carrier:
      return v.is(ValueKind::Elem) && v.element() < s.n();
    case SetKind::Singleton:
      return v.is_e();
    case SetKind::Universe:
      return v.is(ValueKind::SetElem);
    case SetKind::Explicit:
      return std::any_of(s.elements().begin(), s.elements().end(),
                         [&v](const Value& w) { return equal(v, w); });
    case SetKind::Union:
      return std::any_of(s.members().begin(), s.members().end(),
                         [&v](const Set& m) { return contains(m, v); });
    case SetKind::FunSpace: {
      if (v.is_e()) return contains(s.codomain(), v);
      if (!function_like(v) || !equal(v.domain(), s.domain())) return false;
      if (v.is(ValueKind::Table)) {
        return std::all_of(v.outputs().begin(), v.outputs().end(),
                           [&s](const Value& o) { return contains(s.codomain(), o); });
      }
      for (const Value& k : probe_elements(s.domain())) {
        if (!contains(s.codomain(), apply(v, k))) return false;
      }
      return true;
    }
  }
  return false;
}

Value apply(const Value& f, const Value& arg) {
  if (f.is_e()) return f;
  if (f.is(ValueKind::Table)) {
    for (std::size_t i = 0; i < f.keys().size(); ++i) {
      if (equal(f.keys()[i], arg)) return f.outputs()[i];
    }
    throw SemanticError("argument " + arg.to_string() + " outside the domain " +
                        f.domain().to_string());
  }
  if (f.is(ValueKind::Function)) return f.callable()(arg);
  throw SemanticError("cannot apply " + f.to_string());
}

Value default_element(const Set& s) {
  switch (s.kind()) {
    case SetKind::Singleton:
      return Value::e();
    case SetKind::Carrier:
      return Value::elem(0);
    case SetKind::Universe:
      return Value::set(Set::carrier(s.n()));
    case SetKind::FunSpace:
      return constant_function(s.domain(), default_element(s.codomain()));
    case SetKind::Union:
      return default_element(s.members().front());
    case SetKind::Explicit:
      if (s.elements().empty()) throw SemanticError("the empty set has no element");
      return s.elements().front();
  }
  throw SemanticError("unknown set kind");
}

Value identity_on(const Set& s, const std::string& label) {
  if (fits(s, 4096)) {
    std::vector<Value> keys = enumerate(s);
    std::vector<Value> outputs = keys;
    return Value::table(s, std::move(keys), std::move(outputs));
  }
  return Value::function(s, label, {}, [](const Value& v) { return v; });
}

std::vector<std::vector<Value>> product_or_sample(const std::vector<std::vector<Value>>& rows,
                                                  std::size_t limit, std::uint64_t seed) {
  std::size_t total = 1;
  bool over = false;
  for (const auto& row : rows) {
    if (row.empty()) return {};
    if (total > limit / row.size()) over = true;
    total *= row.size();
  }
  std::vector<std::vector<Value>> out;
  if (!over && total <= limit) {
    std::vector<std::size_t> digits(rows.size(), 0);
    while (true) {
      std::vector<Value> pick;
      pick.reserve(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) pick.push_back(rows[i][digits[i]]);
      out.push_back(std::move(pick));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == rows[i].size()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < limit; ++k) {
    std::vector<Value> pick;
    pick.reserve(rows.size());
    for (const auto& row : rows) {
      std::uniform_int_distribution<std::size_t> d(0, row.size() - 1);
      pick.push_back(row[d(rng)]);
    }
    out.push_back(std::move(pick));
  }
  return out;
}

}  // namespace pimodulo::semantic
