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

#include "pimodulo/typing.hpp"

#include <set>

#include "pimodulo/printer.hpp"

namespace pimodulo {

std::string_view to_string(TypeErrorCode code) {
  switch (code) {
    case TypeErrorCode::UnboundVariable:
      return "UnboundVariable";
    case TypeErrorCode::NotAFunction:
      return "NotAFunction";
    case TypeErrorCode::DomainMismatch:
      return "DomainMismatch";
    case TypeErrorCode::IllegalSort:
      return "IllegalSort";
    case TypeErrorCode::TypeMismatch:
      return "TypeMismatch";
    case TypeErrorCode::FuelExhausted:
      return "FuelExhausted";
    case TypeErrorCode::DuplicateName:
      return "DuplicateName";
    case TypeErrorCode::NotBetaNormal:
      return "NotBetaNormal";
    case TypeErrorCode::NonAlgebraicLhs:
      return "NonAlgebraicLhs";
    case TypeErrorCode::UnboundRuleVariable:
      return "UnboundRuleVariable";
    case TypeErrorCode::LooseBoundVariable:
      return "LooseBoundVariable";
  }
  return "Unknown";
}

TypeError::TypeError(TypeErrorCode code, const std::string& message, Term offending,
                     Term expected, Term actual)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      offending_(std::move(offending)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

namespace {

ReductionMode mode_for(const Theory& theory) {
  return theory.rules.empty() ? ReductionMode::Beta : ReductionMode::BetaR;
}

class Checker {
 public:
  Checker(const Theory& theory, const Context& ctx, Fuel& fuel)
      : theory_(theory), ctx_(ctx), fuel_(fuel), mode_(mode_for(theory)) {}

  Term infer(const Term& t) {
    switch (t.kind()) {
      case TermKind::Type:
        return Term::sort_kind();
      case TermKind::Kind:
        throw TypeError(TypeErrorCode::IllegalSort, "Kind has no type", t);
      case TermKind::BVar:
        throw TypeError(TypeErrorCode::LooseBoundVariable, "loose bound variable", t);
      case TermKind::FVar:
      case TermKind::Const: {
        const Term* ty = t.is(TermKind::FVar) ? ctx_.lookup(t.name()) : nullptr;
        if (!ty) ty = theory_.constant_type(t.name());
        if (!ty) throw TypeError(TypeErrorCode::UnboundVariable, "unbound name " + t.name(), t);
        return *ty;
      }
      case TermKind::Pi: {
        expect_type_sort(t.domain());
        Opened open(*this, t);
        Term s = sort_of(open.body);
        return s;
      }
      case TermKind::Lam: {
        expect_type_sort(t.domain());
        Opened open(*this, t);
        Term body_type = infer(open.body);
        if (body_type.is(TermKind::Kind)) {
          throw TypeError(TypeErrorCode::IllegalSort, "abstraction over a term of type Kind", t);
        }
        sort_of(body_type);
        return Term::pi(t.name(), t.domain(), abstract(body_type, open.name));
      }
      case TermKind::App: {
        Term fn_type = normal(infer(t.fn()));
        if (!fn_type.is(TermKind::Pi)) {
          throw TypeError(TypeErrorCode::NotAFunction,
                          "head " + print_term(t.fn()) + " has type " + print_term(fn_type), t,
                          Term{}, fn_type);
        }
        Term arg_type = infer(t.arg());
        switch (convertible(arg_type, fn_type.domain(), theory_, fuel_, mode_)) {
          case Convertibility::Convertible:
            break;
          case Convertibility::FuelExhausted:
            throw exhausted(t);
          case Convertibility::NotConvertible:
            throw TypeError(TypeErrorCode::DomainMismatch,
                            "argument " + print_term(t.arg()) + " has type " +
                                print_term(normal(arg_type)) + ", expected " +
                                print_term(fn_type.domain()),
                            t, fn_type.domain(), normal(arg_type));
        }
        Term result = instantiate(fn_type.body(), t.arg());
        NormalizeResult nf = normalize(result, theory_, ReductionMode::Beta, fuel_);
        if (nf.exhausted) throw exhausted(t);
        return nf.term;
      }
    }
    throw TypeError(TypeErrorCode::IllegalSort, "unknown term kind", t);
  }

  /// The sort of a type: Type or Kind, else IllegalSort.
  Term sort_of(const Term& a) {
    Term s = normal(infer(a));
    if (!s.is_sort()) {
      throw TypeError(TypeErrorCode::IllegalSort,
                      print_term(a) + " is not a type (its type is " + print_term(s) + ")", a,
                      Term{}, s);
    }
    return s;
  }

  void expect_type_sort(const Term& a) {
    Term s = sort_of(a);
    if (!s.is(TermKind::Type)) {
      throw TypeError(TypeErrorCode::IllegalSort,
                      "binder domain " + print_term(a) + " must have type Type", a,
                      Term::sort_type(), s);
    }
  }

  Term normal(const Term& t) {
    NormalizeResult nf = normalize(t, theory_, mode_, fuel_);
    if (nf.exhausted) throw exhausted(t);
    return nf.term;
  }

  ReductionMode mode() const { return mode_; }

 private:
  struct Opened {
    Opened(Checker& c, const Term& binder) : checker(c) {
      name = c.fresh(binder.name(), binder.body());
      c.ctx_.push(name, binder.domain());
      body = instantiate(binder.body(), Term::fvar(name));
    }
    ~Opened() { checker.ctx_.pop(); }
    Opened(const Opened&) = delete;
    Opened& operator=(const Opened&) = delete;

    Checker& checker;
    std::string name;
    Term body;
  };

  std::string fresh(const std::string& hint, const Term& body) {
    std::string base = hint.empty() ? "x" : hint;
    std::string name = base;
    for (unsigned k = 1; ctx_.contains(name) || theory_.constant_type(name) ||
                         occurs_free(body, name);
         ++k) {
      name = base + "_" + std::to_string(k);
    }
    return name;
  }

  static TypeError exhausted(const Term& t) {
    return TypeError(TypeErrorCode::FuelExhausted, "conversion ran out of fuel", t);
  }

  const Theory& theory_;
  Context ctx_;
  Fuel& fuel_;
  ReductionMode mode_;
};

bool collect_pattern(const Term& p, std::set<std::string>& vars, bool at_head_arg) {
  switch (p.kind()) {
    case TermKind::FVar:
      return at_head_arg && vars.insert(p.name()).second;
    case TermKind::Const:
      return true;
    case TermKind::App:
      return collect_pattern(p.fn(), vars, false) && p.fn().kind() != TermKind::FVar &&
             collect_pattern(p.arg(), vars, true);
    default:
      return false;
  }
}

bool unifiable(const Term& p, const Term& q) {
  if (p.is(TermKind::FVar) || q.is(TermKind::FVar)) return true;
  if (p.is(TermKind::App) && q.is(TermKind::App)) {
    return unifiable(p.fn(), q.fn()) && unifiable(p.arg(), q.arg());
  }
  return alpha_eq(p, q);
}

}  // namespace

Term infer(const Theory& theory, const Context& ctx, const Term& t, Fuel& fuel) {
  Checker c(theory, ctx, fuel);
  return c.infer(t);
}

void check(const Theory& theory, const Context& ctx, const Term& t, const Term& expected,
           Fuel& fuel) {
  Checker c(theory, ctx, fuel);
  if (!expected.is(TermKind::Kind)) c.sort_of(expected);
  Term actual = c.infer(t);
  switch (convertible(actual, expected, theory, fuel, c.mode())) {
    case Convertibility::Convertible:
      return;
    case Convertibility::FuelExhausted:
      throw TypeError(TypeErrorCode::FuelExhausted, "conversion ran out of fuel", t);
    case Convertibility::NotConvertible: {
      Term a = c.normal(actual);
      Term e = c.normal(expected);
      throw TypeError(TypeErrorCode::TypeMismatch,
                      print_term(t) + " has type " + print_term(a) + ", expected " + print_term(e),
                      t, e, a);
    }
  }
}

void check_context(const Theory& theory, const Context& ctx, Fuel& fuel) {
  Context prefix;
  for (const Declaration& d : ctx) {
    if (prefix.contains(d.name) || theory.constant_type(d.name)) {
      throw TypeError(TypeErrorCode::DuplicateName, d.name + " is already declared",
                      Term::fvar(d.name));
    }
    Checker c(theory, prefix, fuel);
    c.sort_of(d.type);
    prefix.push(d.name, d.type);
  }
}

bool is_algebraic_pattern(const Term& lhs) {
  auto [head, args] = spine(lhs);
  if (!head.is(TermKind::Const)) return false;
  std::set<std::string> vars;
  return collect_pattern(lhs, vars, false);
}

void check_rule(const Theory& signature, const RewriteRule& rule, Fuel& fuel) {
  const Theory plain = signature.signature_only();
  for (const Term* part : {&rule.lhs, &rule.rhs, &rule.type}) {
    if (!is_normal(*part, plain, ReductionMode::Beta)) {
      throw TypeError(TypeErrorCode::NotBetaNormal, print_term(*part) + " is not beta-normal",
                      *part);
    }
  }
  if (!is_algebraic_pattern(rule.lhs)) {
    throw TypeError(TypeErrorCode::NonAlgebraicLhs,
                    "left-hand side " + print_term(rule.lhs) +
                        " must be a constant applied to distinct pattern variables or nested "
                        "constant-headed patterns",
                    rule.lhs);
  }
  const std::set<std::string> lhs_vars = free_vars(rule.lhs);
  for (const std::string& x : lhs_vars) {
    if (!rule.context.contains(x)) {
      throw TypeError(TypeErrorCode::UnboundRuleVariable,
                      "pattern variable " + x + " is not declared in the rule context",
                      Term::fvar(x));
    }
  }
  for (const std::string& x : free_vars(rule.rhs)) {
    if (!lhs_vars.count(x)) {
      throw TypeError(TypeErrorCode::UnboundRuleVariable,
                      "variable " + x + " of the right-hand side does not occur on the left",
                      Term::fvar(x));
    }
  }
  check_context(plain, rule.context, fuel);
  check(plain, rule.context, rule.lhs, rule.type, fuel);
  check(plain, rule.context, rule.rhs, rule.type, fuel);
}

bool is_object(const Theory& theory, const Context& ctx, const Term& t, Fuel& fuel) {
  Checker c(theory, ctx, fuel);
  Term a = c.infer(t);
  if (a.is(TermKind::Kind)) return false;
  return c.sort_of(a).is(TermKind::Type);
}

bool TheoryReport::ok() const { return error_count() == 0; }

std::size_t TheoryReport::error_count() const {
  std::size_t n = 0;
  for (const ReportItem& i : items) n += i.ok ? 0 : 1;
  return n;
}

const ReportItem* TheoryReport::find(const std::string& subject) const {
  for (const ReportItem& i : items) {
    if (i.subject == subject) return &i;
  }
  return nullptr;
}

TheoryReport check_theory(const Theory& theory, Fuel& fuel) {
  TheoryReport report;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < theory.signature.size(); ++i) {
    const Declaration& d = theory.signature[i];
    ReportItem item{d.name, "constant", true, {}, {}};
    try {
      if (!seen.insert(d.name).second) {
        throw TypeError(TypeErrorCode::DuplicateName, d.name + " is declared twice",
                        Term::constant(d.name));
      }
      Theory prefix;
      prefix.signature = theory.signature.prefix(i);
      Checker c(prefix, Context{}, fuel);
      c.sort_of(d.type);
    } catch (const TypeError& e) {
      item.ok = false;
      item.code = std::string(to_string(e.code()));
      item.message = e.what();
    }
    report.items.push_back(std::move(item));
  }
  for (const RewriteRule& rule : theory.rules) {
    ReportItem item{rule.id, "rule", true, {}, {}};
    try {
      check_rule(theory, rule, fuel);
    } catch (const TypeError& e) {
      item.ok = false;
      item.code = std::string(to_string(e.code()));
      item.message = e.what();
    }
    report.items.push_back(std::move(item));
  }
  for (std::size_t i = 0; i < theory.rules.size(); ++i) {
    for (std::size_t j = i + 1; j < theory.rules.size(); ++j) {
      if (unifiable(theory.rules[i].lhs, theory.rules[j].lhs)) {
        report.warnings.push_back("rules " + theory.rules[i].id + " and " + theory.rules[j].id +
                                  " overlap at the root; " + theory.rules[i].id +
                                  " takes priority");
      }
    }
  }
  return report;
}

}  // namespace pimodulo
