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

#include "pimodulo/model_cc.hpp"

#include <memory>

namespace pimodulo {

using semantic::SemanticError;
using semantic::Set;
using semantic::SetKind;
using semantic::Valuation;
using semantic::Value;
using semantic::ValueKind;

namespace {

Set n_domain(unsigned n, const Term& t) {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return Set::universe(n);
    case TermKind::Const:
      return t.name() == "U_Kind" ? Set::universe(n) : Set::singleton();
    case TermKind::FVar:
    case TermKind::BVar:
      return Set::singleton();
    case TermKind::Lam:
      return n_domain(n, t.body());
    case TermKind::App:
      return n_domain(n, t.fn());
    case TermKind::Pi:
      return Set::fun_space(n_domain(n, t.domain()), n_domain(n, t.body()));
  }
  return Set::singleton();
}

const Set& expect_set(const Value& v) {
  if (!v.is(ValueKind::SetElem)) throw SemanticError("expected a set, got " + v.to_string());
  return v.as_set();
}

Element expect_elem(const Value& v, const char* what) {
  if (!v.is(ValueKind::Elem)) {
    throw SemanticError(std::string(what) + " is not interpreted in the carrier: " + v.to_string());
  }
  return v.element();
}

bool small_enough(const Set& s, std::size_t cap) {
  if (!semantic::enumerable(s)) return false;
  try {
    semantic::cardinality(s, cap);
    return true;
  } catch (const semantic::SizeLimitExceeded&) {
    return false;
  }
}

// Everything M-level evaluation needs, by value so that closures built
// for lambdas over non-enumerable domains stay valid on their own.
struct MContext {
  unsigned n = 1;
  std::size_t cap = semantic::kDefaultCardinalityCap;
  std::shared_ptr<const Valuation> constants;
};

Value m_eval(const MContext& m, const Term& t, const Valuation& psi, std::vector<Value>& env) {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return Value::set(Set::carrier(m.n));
    case TermKind::Const: {
      auto it = m.constants->find(t.name());
      if (it == m.constants->end()) throw SemanticError("no M-domain for constant " + t.name());
      return it->second;
    }
    case TermKind::FVar: {
      auto it = psi.find(t.name());
      if (it == psi.end()) throw SemanticError("no psi value for variable " + t.name());
      return it->second;
    }
    case TermKind::BVar:
      if (t.index() >= env.size()) throw SemanticError("loose bound variable");
      return env[env.size() - 1 - t.index()];
    case TermKind::Lam: {
      const Set nc = n_domain(m.n, t.domain());
      if (small_enough(nc, m.cap)) {
        std::vector<Value> keys = semantic::enumerate(nc, m.cap);
        std::vector<Value> outs;
        outs.reserve(keys.size());
        for (const Value& c : keys) {
          env.push_back(c);
          outs.push_back(m_eval(m, t.body(), psi, env));
          env.pop_back();
        }
        return Value::table(nc, std::move(keys), std::move(outs));
      }
      bool all_e = true;
      for (const Value& c : semantic::probe_elements(nc)) {
        env.push_back(c);
        all_e = all_e && m_eval(m, t.body(), psi, env).is_e();
        env.pop_back();
      }
      if (all_e) return Value::e();
      return Value::function(nc, "", {}, [m, psi, env, body = t.body()](const Value& c) {
        std::vector<Value> inner = env;
        inner.push_back(c);
        return m_eval(m, body, psi, inner);
      });
    }
    case TermKind::App: {
      Value f = m_eval(m, t.fn(), psi, env);
      if (f.is_e()) return f;
      return semantic::apply(f, m_eval(m, t.arg(), psi, env));
    }
    case TermKind::Pi: {
      const Set mc = expect_set(m_eval(m, t.domain(), psi, env));
      Set codomain;
      if (!has_loose_bvar(t.body(), 0)) {
        env.push_back(Value::e());
        codomain = expect_set(m_eval(m, t.body(), psi, env));
        env.pop_back();
      } else {
        const Set nc = n_domain(m.n, t.domain());
        if (!semantic::enumerable(nc)) {
          throw semantic::UnenumerableUnion("union over " + nc.to_string() +
                                            " demanded by a dependent product");
        }
        std::vector<Set> members;
        for (const Value& c : semantic::enumerate(nc, m.cap)) {
          env.push_back(c);
          members.push_back(expect_set(m_eval(m, t.body(), psi, env)));
          env.pop_back();
        }
        codomain = Set::union_of(members);
      }
      return Value::set(Set::fun_space(mc, codomain));
    }
  }
  throw SemanticError("unknown term");
}

}  // namespace

CcModel::CcModel(FiniteAlgebra algebra, std::size_t cap)
    : algebra_(std::move(algebra)), carrier_(Set::carrier(algebra_.n())), cap_(cap) {
  const unsigned n = algebra_.n();
  const Set b = carrier_;
  const Set one = Set::singleton();
  const Set universe = Set::universe(n);
  const Value e = Value::e();

  auto table = std::make_shared<Valuation>();
  Valuation& m = *table;
  for (const char* name : {"U_Type", "U_Kind", "dType"}) m[name] = Value::set(b);
  m["eps_Kind"] = semantic::identity_on(universe, "eps_Kind");
  m["eps_Type"] = Value::table(one, {e}, {Value::set(one)});
  m["dPi{Type,Type,Type}"] = e;
  m["dPi{Kind,Type,Type}"] = e;
  const Set families = Set::fun_space(one, universe);
  m["dPi{Type,Kind,Kind}"] = Value::table(
      one, {e}, {Value::function(families, "dPi{Type,Kind,Kind}", {}, [one](const Value& h) {
        return Value::set(Set::fun_space(one, expect_set(semantic::apply(h, Value::e()))));
      })});
  m["dPi{Kind,Kind,Kind}"] =
      Value::function(universe, "dPi{Kind,Kind,Kind}", {}, [families](const Value& a) {
        return Value::function(families, "dPi{Kind,Kind,Kind}", {a}, [a](const Value& h) {
          return Value::set(
              Set::fun_space(expect_set(a), expect_set(semantic::apply(h, Value::e()))));
        });
      });

  m_constants_ = std::move(table);

  Valuation& i = interp_constants_;
  i["eps_Type"] = semantic::identity_on(b, "eps");
  i["eps_Kind"] = i["eps_Type"];
  const FiniteAlgebra* alg = &algebra_;
  std::vector<Value> keys = semantic::enumerate(b);
  std::vector<Value> rows;
  for (const Value& c : keys) {
    rows.push_back(Value::function(universe, "dPi", {c}, [alg, c](const Value& f) {
      // f maps some set S to the carrier; collect {f s | s in S}.
      std::vector<Value> image;
      if (f.is(ValueKind::Table)) {
        image = f.outputs();
      } else if (f.is(ValueKind::Function)) {
        for (const Value& s : semantic::enumerate(f.domain())) image.push_back(semantic::apply(f, s));
      } else {
        throw SemanticError("dPi expects a family, got " + f.to_string());
      }
      Subset mask = 0;
      for (const Value& v : image) mask |= Subset{1} << expect_elem(v, "dPi family");
      return Value::elem(alg->pi(c.element(), mask));
    }));
  }
  const Value dpi = Value::table(b, keys, rows);
  for (const char* name :
       {"dPi{Type,Type,Type}", "dPi{Type,Kind,Kind}", "dPi{Kind,Type,Type}", "dPi{Kind,Kind,Kind}"}) {
    i[name] = dpi;
  }
}

Set CcModel::domain_n(const Term& t) const { return n_domain(algebra_.n(), t); }

Value CcModel::domain_m(const Term& t, const Valuation& psi) const {
  MContext m{algebra_.n(), cap_, m_constants_};
  std::vector<Value> env;
  return m_eval(m, t, psi, env);
}

Set CcModel::domain_m_set(const Term& t, const Valuation& psi) const {
  return expect_set(domain_m(t, psi));
}

std::vector<Value> CcModel::psi_env(const std::vector<Bound>& env) const {
  std::vector<Value> out;
  out.reserve(env.size());
  for (const Bound& b : env) out.push_back(b.psi);
  return out;
}

Value CcModel::interp(const Term& t, const Valuation& phi, const Valuation& psi) const {
  std::vector<Bound> env;
  return eval(t, phi, psi, env);
}

Value CcModel::eval(const Term& t, const Valuation& phi, const Valuation& psi,
                    std::vector<Bound>& env) const {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return Value::elem(algebra_.top());
    case TermKind::Const: {
      const std::string& c = t.name();
      if (c == "U_Type" || c == "U_Kind" || c == "dType") return Value::elem(algebra_.top());
      auto it = interp_constants_.find(c);
      if (it == interp_constants_.end()) throw SemanticError("no interpretation for constant " + c);
      return it->second;
    }
    case TermKind::FVar: {
      auto it = phi.find(t.name());
      if (it == phi.end()) throw SemanticError("no value for variable " + t.name());
      return it->second;
    }
    case TermKind::BVar:
      if (t.index() >= env.size()) throw SemanticError("loose bound variable");
      return env[env.size() - 1 - t.index()].value;
    case TermKind::Lam:
    case TermKind::Pi: {
      MContext m{algebra_.n(), cap_, m_constants_};
      std::vector<Value> penv = psi_env(env);
      const Set mc = expect_set(m_eval(m, t.domain(), psi, penv));
      const Value bound_psi = semantic::default_element(domain_n(t.domain()));
      std::vector<Value> keys = semantic::enumerate(mc, cap_);
      if (t.is(TermKind::Lam)) {
        std::vector<Value> outs;
        outs.reserve(keys.size());
        for (const Value& c : keys) {
          env.push_back({c, bound_psi});
          outs.push_back(eval(t.body(), phi, psi, env));
          env.pop_back();
        }
        return Value::table(mc, std::move(keys), std::move(outs));
      }
      const Element cv = expect_elem(eval(t.domain(), phi, psi, env), "product domain");
      Subset image = 0;
      for (const Value& c : keys) {
        env.push_back({c, bound_psi});
        image |= Subset{1} << expect_elem(eval(t.body(), phi, psi, env), "product codomain");
        env.pop_back();
      }
      return Value::elem(algebra_.pi(cv, image));
    }
    case TermKind::App: {
      Value f = eval(t.fn(), phi, psi, env);
      if (f.is_e()) return f;
      return semantic::apply(f, eval(t.arg(), phi, psi, env));
    }
  }
  throw SemanticError("unknown term");
}

std::vector<Valuation> CcModel::psi_valuations(const Context& ctx, std::size_t limit,
                                               std::uint64_t seed) const {
  std::vector<std::vector<Value>> rows;
  for (const Declaration& d : ctx) rows.push_back(semantic::probe_elements(domain_n(d.type)));
  std::vector<Valuation> out;
  for (auto& pick : semantic::product_or_sample(rows, limit, seed)) {
    Valuation psi;
    for (std::size_t i = 0; i < pick.size(); ++i) psi[ctx[i].name] = std::move(pick[i]);
    out.push_back(std::move(psi));
  }
  return out;
}

std::vector<Valuation> CcModel::valuations(const Context& ctx, const Valuation& psi,
                                           std::size_t limit, std::uint64_t seed) const {
  std::vector<std::vector<Value>> rows;
  for (const Declaration& d : ctx) {
    rows.push_back(semantic::enumerate(domain_m_set(d.type, psi), cap_));
  }
  std::vector<Valuation> out;
  for (auto& pick : semantic::product_or_sample(rows, limit, seed)) {
    Valuation phi;
    for (std::size_t i = 0; i < pick.size(); ++i) phi[ctx[i].name] = std::move(pick[i]);
    out.push_back(std::move(phi));
  }
  return out;
}

Valuation CcModel::default_psi(const Context& ctx) const {
  Valuation psi;
  for (const Declaration& d : ctx) psi[d.name] = semantic::default_element(domain_n(d.type));
  return psi;
}

bool mentions_cc_sorts(const Term& t) {
  switch (t.kind()) {
    case TermKind::Kind:
    case TermKind::Type:
      return true;
    case TermKind::Const:
      return t.name() == "U_Kind";
    case TermKind::FVar:
    case TermKind::BVar:
      return false;
    default:
      return mentions_cc_sorts(t.child(0)) || mentions_cc_sorts(t.child(1));
  }
}

LemmaVerdict check_lemma1_cc(const CcModel& model, const Term& t) {
  if (mentions_cc_sorts(t)) return LemmaVerdict::PreconditionUnmet;
  return verdict(model.domain_n(t).is(SetKind::Singleton));
}

LemmaVerdict check_lemma2_cc(const CcModel& model, const Term& t, const std::string& x,
                             const Term& u) {
  if (mentions_cc_sorts(u)) return LemmaVerdict::PreconditionUnmet;
  return verdict(semantic::equal(model.domain_n(substitute(t, x, u)), model.domain_n(t)));
}

LemmaVerdict check_substitution_cc(const CcModel& model, const Term& t, const std::string& x,
                                   const Term& u, const Valuation& phi, const Valuation& psi) {
  const Term substituted = substitute(t, x, u);
  Valuation psi_x = psi;
  psi_x[x] = model.domain_m(u, psi);
  if (!semantic::equal(model.domain_m(substituted, psi), model.domain_m(t, psi_x))) {
    return LemmaVerdict::Fails;
  }
  Valuation phi_x = phi;
  phi_x[x] = model.interp(u, phi, psi);
  return verdict(semantic::equal(model.interp(substituted, phi, psi), model.interp(t, phi_x, psi_x)));
}

LemmaVerdict check_conversion_cc(const CcModel& model, const Term& t, const Term& u,
                                 const Valuation& phi, const Valuation& psi) {
  if (!semantic::equal(model.domain_n(t), model.domain_n(u))) return LemmaVerdict::Fails;
  if (!semantic::equal(model.domain_m(t, psi), model.domain_m(u, psi))) return LemmaVerdict::Fails;
  return verdict(semantic::equal(model.interp(t, phi, psi), model.interp(u, phi, psi)));
}

LemmaVerdict check_typing_discipline_cc(const CcModel& model, const Term& t, const Term& type,
                                        const Valuation& psi) {
  return verdict(semantic::contains(model.domain_n(type), model.domain_m(t, psi)));
}

}  // namespace pimodulo
