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

#include "pimodulo/reduction.hpp"

#include <unordered_set>

namespace pimodulo {

std::optional<Term> beta_root(const Term& t) {
  if (t.is(TermKind::App) && t.fn().is(TermKind::Lam)) return instantiate(t.fn().body(), t.arg());
  return std::nullopt;
}

namespace {

bool match_into(const Term& pattern, const Term& t, MatchSubstitution& theta) {
  switch (pattern.kind()) {
    case TermKind::FVar: {
      auto [it, inserted] = theta.emplace(pattern.name(), t);
      return inserted || alpha_eq(it->second, t);
    }
    case TermKind::App:
      return t.is(TermKind::App) && match_into(pattern.fn(), t.fn(), theta) &&
             match_into(pattern.arg(), t.arg(), theta);
    default:
      return alpha_eq(pattern, t);
  }
}

std::optional<Reduct> root_step(const Term& t, const Theory& theory, ReductionMode mode) {
  if (auto b = beta_root(t)) return Reduct{{}, "beta", *b};
  if (mode == ReductionMode::BetaR) {
    if (auto r = r_root(t, theory)) return Reduct{{}, theory.rules[r->rule_index].id, r->result};
  }
  return std::nullopt;
}

void collect_reducts(const Term& t, const Theory& theory, ReductionMode mode, Position& pos,
                     std::vector<Reduct>& out) {
  if (auto b = beta_root(t)) out.push_back({pos, "beta", *b});
  if (mode == ReductionMode::BetaR) {
    // Every matching rule contributes, not just the first one.
    for (std::size_t i = 0; i < theory.rules.size(); ++i) {
      const RewriteRule& rule = theory.rules[i];
      if (auto theta = match_pattern(rule.lhs, t)) {
        std::vector<std::pair<std::string, Term>> bindings(theta->begin(), theta->end());
        out.push_back({pos, rule.id, substitute(rule.rhs, bindings)});
      }
    }
  }
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    pos.push_back(i);
    std::size_t first = out.size();
    collect_reducts(t.child(i), theory, mode, pos, out);
    for (std::size_t k = first; k < out.size(); ++k) {
      Term a = i == 0 ? out[k].term : t.child(0);
      Term b = i == 1 ? out[k].term : t.child(1);
      switch (t.kind()) {
        case TermKind::Pi:
          out[k].term = Term::pi(t.name(), a, b);
          break;
        case TermKind::Lam:
          out[k].term = Term::lam(t.name(), a, b);
          break;
        default:
          out[k].term = Term::app(a, b);
      }
    }
    pos.pop_back();
  }
}

std::optional<Reduct> lo_step(const Term& t, const Theory& theory, ReductionMode mode,
                              Position& pos) {
  if (auto r = root_step(t, theory, mode)) {
    r->position = pos;
    return r;
  }
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    pos.push_back(i);
    auto r = lo_step(t.child(i), theory, mode, pos);
    pos.pop_back();
    if (r) {
      Term a = i == 0 ? r->term : t.child(0);
      Term b = i == 1 ? r->term : t.child(1);
      if (t.is(TermKind::Pi)) {
        r->term = Term::pi(t.name(), a, b);
      } else if (t.is(TermKind::Lam)) {
        r->term = Term::lam(t.name(), a, b);
      } else {
        r->term = Term::app(a, b);
      }
      return r;
    }
  }
  return std::nullopt;
}

bool has_redex(const Term& t, const Theory& theory, ReductionMode mode) {
  if (root_step(t, theory, mode)) return true;
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    if (has_redex(t.child(i), theory, mode)) return true;
  }
  return false;
}

}  // namespace

std::optional<MatchSubstitution> match_pattern(const Term& lhs, const Term& t) {
  MatchSubstitution theta;
  if (!match_into(lhs, t, theta)) return std::nullopt;
  return theta;
}

std::optional<RuleApplication> r_root(const Term& t, const Theory& theory) {
  // Cheap pre-filter: rule left-hand sides are headed by constants.
  if (!t.is(TermKind::App) && !t.is(TermKind::Const)) return std::nullopt;
  for (std::size_t i = 0; i < theory.rules.size(); ++i) {
    const RewriteRule& rule = theory.rules[i];
    if (auto theta = match_pattern(rule.lhs, t)) {
      std::vector<std::pair<std::string, Term>> bindings(theta->begin(), theta->end());
      return RuleApplication{substitute(rule.rhs, bindings), i, std::move(*theta)};
    }
  }
  return std::nullopt;
}

std::vector<Reduct> one_step_reducts(const Term& t, const Theory& theory, ReductionMode mode) {
  std::vector<Reduct> all;
  Position pos;
  collect_reducts(t, theory, mode, pos, all);
  std::unordered_set<Term, TermHash> seen;
  std::vector<Reduct> out;
  for (Reduct& r : all) {
    if (seen.insert(r.term).second) out.push_back(std::move(r));
  }
  return out;
}

bool is_normal(const Term& t, const Theory& theory, ReductionMode mode) {
  return !has_redex(t, theory, mode);
}

std::optional<Reduct> leftmost_outermost_step(const Term& t, const Theory& theory,
                                              ReductionMode mode) {
  Position pos;
  return lo_step(t, theory, mode, pos);
}

NormalizeResult normalize(const Term& t, const Theory& theory, ReductionMode mode, Fuel& fuel,
                          const TraceFn& trace) {
  NormalizeResult result{t};
  while (true) {
    auto step = leftmost_outermost_step(result.term, theory, mode);
    if (!step) return result;
    if (!fuel.consume()) {
      result.exhausted = true;
      return result;
    }
    ++result.steps;
    result.term = std::move(step->term);
    if (trace) {
      step->term = result.term;
      trace(*step);
    }
  }
}

Convertibility convertible(const Term& t, const Term& u, const Theory& theory, Fuel& fuel,
                           ReductionMode mode) {
  if (alpha_eq(t, u)) return Convertibility::Convertible;
  NormalizeResult nt = normalize(t, theory, mode, fuel);
  if (nt.exhausted) return Convertibility::FuelExhausted;
  NormalizeResult nu = normalize(u, theory, mode, fuel);
  if (nu.exhausted) return Convertibility::FuelExhausted;
  return alpha_eq(nt.term, nu.term) ? Convertibility::Convertible
                                    : Convertibility::NotConvertible;
}

}  // namespace pimodulo
