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

#include "pimodulo/model_stt.hpp"

namespace pimodulo {

using semantic::SemanticError;
using semantic::Set;
using semantic::SetKind;
using semantic::Valuation;
using semantic::Value;
using semantic::ValueKind;

namespace {

bool is_forall(const std::string& name) { return name.rfind("forall{", 0) == 0; }

Element expect_elem(const Value& v, const char* what) {
  if (!v.is(ValueKind::Elem)) {
    throw SemanticError(std::string(what) + " is not interpreted in the carrier: " + v.to_string());
  }
  return v.element();
}

}  // namespace

SttModel::SttModel(const Theory& theory, FiniteAlgebra algebra, std::size_t cap)
    : theory_(theory), algebra_(std::move(algebra)), carrier_(Set::carrier(algebra_.n())), cap_(cap) {
  const unsigned n = algebra_.n();
  std::vector<Value> bools = semantic::enumerate(carrier_);
  constants_["eps"] = semantic::identity_on(carrier_, "eps");
  std::vector<Value> rows;
  for (Element w = 0; w < n; ++w) {
    std::vector<Value> outs;
    for (Element w2 = 0; w2 < n; ++w2) outs.push_back(Value::elem(algebra_.arrow(w, w2)));
    rows.push_back(Value::table(carrier_, bools, std::move(outs)));
  }
  constants_["imp"] = Value::table(carrier_, bools, std::move(rows));
  for (const Declaration& d : theory_.signature) {
    if (!is_forall(d.name)) continue;
    // (C -> o) -> o
    const Term& c = d.type.domain().domain();
    const Set mc = domain(c);
    const Element cv = expect_elem(interp(c, {}), "forall domain");
    const Set fs = Set::fun_space(mc, carrier_);
    std::vector<Value> keys = semantic::enumerate(fs, cap_);
    std::vector<Value> outs;
    outs.reserve(keys.size());
    const std::vector<Value> cs = semantic::enumerate(mc, cap_);
    for (const Value& f : keys) {
      Subset image = 0;
      for (const Value& x : cs) image |= Subset{1} << expect_elem(semantic::apply(f, x), "forall body");
      outs.push_back(Value::elem(algebra_.pi(cv, image)));
    }
    constants_[d.name] = Value::table(fs, std::move(keys), std::move(outs));
  }
}

Set SttModel::domain(const Term& t) const {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return carrier_;
    case TermKind::Const:
      return t.name() == "o" ? carrier_ : Set::singleton();
    case TermKind::FVar:
    case TermKind::BVar:
      return Set::singleton();
    case TermKind::Lam:
      return domain(t.body());
    case TermKind::App:
      return domain(t.fn());
    case TermKind::Pi:
      return Set::fun_space(domain(t.domain()), domain(t.body()));
  }
  return Set::singleton();
}

Value SttModel::constant_value(const std::string& name) const {
  if (name == "iota" || name == "o") return Value::elem(algebra_.top());
  auto it = constants_.find(name);
  if (it == constants_.end()) throw SemanticError("no interpretation for constant " + name);
  return it->second;
}

Value SttModel::interp(const Term& t, const Valuation& phi) const {
  std::vector<Value> env;
  return eval(t, phi, env);
}

Value SttModel::eval(const Term& t, const Valuation& phi, std::vector<Value>& env) const {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return Value::elem(algebra_.top());
    case TermKind::Const:
      return constant_value(t.name());
    case TermKind::FVar: {
      auto it = phi.find(t.name());
      if (it == phi.end()) throw SemanticError("no value for variable " + t.name());
      return it->second;
    }
    case TermKind::BVar:
      if (t.index() >= env.size()) throw SemanticError("loose bound variable");
      return env[env.size() - 1 - t.index()];
    case TermKind::Lam: {
      const Set mc = domain(t.domain());
      std::vector<Value> keys = semantic::enumerate(mc, cap_);
      std::vector<Value> outs;
      outs.reserve(keys.size());
      for (const Value& c : keys) {
        env.push_back(c);
        outs.push_back(eval(t.body(), phi, env));
        env.pop_back();
      }
      return Value::table(mc, std::move(keys), std::move(outs));
    }
    case TermKind::App: {
      Value f = eval(t.fn(), phi, env);
      if (f.is_e()) return f;
      return semantic::apply(f, eval(t.arg(), phi, env));
    }
    case TermKind::Pi: {
      const Element cv = expect_elem(eval(t.domain(), phi, env), "product domain");
      Subset image = 0;
      for (const Value& c : semantic::enumerate(domain(t.domain()), cap_)) {
        env.push_back(c);
        image |= Subset{1} << expect_elem(eval(t.body(), phi, env), "product codomain");
        env.pop_back();
      }
      return Value::elem(algebra_.pi(cv, image));
    }
  }
  throw SemanticError("unknown term");
}

std::vector<Valuation> SttModel::valuations(const Context& ctx, std::size_t limit,
                                            std::uint64_t seed) const {
  std::vector<std::vector<Value>> rows;
  for (const Declaration& d : ctx) rows.push_back(semantic::enumerate(domain(d.type), cap_));
  std::vector<Valuation> out;
  for (auto& pick : semantic::product_or_sample(rows, limit, seed)) {
    Valuation phi;
    for (std::size_t i = 0; i < pick.size(); ++i) phi[ctx[i].name] = std::move(pick[i]);
    out.push_back(std::move(phi));
  }
  return out;
}

bool mentions_stt_sorts(const Term& t) {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return true;
    case TermKind::Const:
      return t.name() == "o";
    case TermKind::FVar:
    case TermKind::BVar:
      return false;
    default:
      return mentions_stt_sorts(t.child(0)) || mentions_stt_sorts(t.child(1));
  }
}

LemmaVerdict check_lemma1_stt(const SttModel& model, const Term& t) {
  if (mentions_stt_sorts(t)) return LemmaVerdict::PreconditionUnmet;
  return verdict(model.domain(t).is(SetKind::Singleton));
}

LemmaVerdict check_lemma2_stt(const SttModel& model, const Term& t, const std::string& x,
                              const Term& u) {
  if (mentions_stt_sorts(u)) return LemmaVerdict::PreconditionUnmet;
  return verdict(semantic::equal(model.domain(substitute(t, x, u)), model.domain(t)));
}

LemmaVerdict check_substitution_stt(const SttModel& model, const Term& t, const std::string& x,
                                    const Term& u, const Valuation& phi) {
  const Value lhs = model.interp(substitute(t, x, u), phi);
  Valuation extended = phi;
  extended[x] = model.interp(u, phi);
  return verdict(semantic::equal(lhs, model.interp(t, extended)));
}

LemmaVerdict check_conversion_stt(const SttModel& model, const Term& t, const Term& u,
                                  const Valuation& phi) {
  if (!semantic::equal(model.domain(t), model.domain(u))) return LemmaVerdict::Fails;
  return verdict(semantic::equal(model.interp(t, phi), model.interp(u, phi)));
}

LemmaVerdict check_typing_discipline_stt(const SttModel& model, const Term& t, const Term& type,
                                         const Valuation& phi) {
  return verdict(semantic::contains(model.domain(type), model.interp(t, phi)));
}

}  // namespace pimodulo
