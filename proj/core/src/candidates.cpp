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

#include "pimodulo/candidates.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace pimodulo {

namespace {

std::vector<Term> distinct_reducts(const Term& t, const Theory& theory, ReductionMode mode) {
  std::vector<Term> out;
  for (Reduct& r : one_step_reducts(t, theory, mode)) {
    if (std::find(out.begin(), out.end(), r.term) == out.end()) out.push_back(std::move(r.term));
  }
  return out;
}

struct Exploration {
  bool complete = false;
  std::uint32_t depth = 0;
  std::unordered_map<Term, std::uint32_t, TermHash> done;
};

Exploration explore(const Term& root, Fuel& fuel, const Theory& theory, ReductionMode mode) {
  struct Frame {
    Term term;
    std::vector<Term> kids;
    std::size_t next = 0;
    std::uint32_t best = 0;
  };
  Exploration ex;
  std::unordered_set<Term, TermHash> on_stack;
  std::vector<Frame> stack;
  if (!fuel.consume()) return ex;
  stack.push_back({root, distinct_reducts(root, theory, mode)});
  on_stack.insert(root);
  while (!stack.empty()) {
    const std::size_t top = stack.size() - 1;
    if (stack[top].next < stack[top].kids.size()) {
      Term kid = stack[top].kids[stack[top].next++];
      auto it = ex.done.find(kid);
      if (it != ex.done.end()) {
        stack[top].best = std::max(stack[top].best, it->second + 1);
        continue;
      }
      if (on_stack.count(kid) || !fuel.consume()) return ex;
      std::vector<Term> kids = distinct_reducts(kid, theory, mode);
      on_stack.insert(kid);
      stack.push_back({std::move(kid), std::move(kids)});
      continue;
    }
    Frame frame = std::move(stack.back());
    stack.pop_back();
    on_stack.erase(frame.term);
    if (!stack.empty()) stack.back().best = std::max(stack.back().best, frame.best + 1);
    ex.done.emplace(std::move(frame.term), frame.best);
    if (stack.empty()) ex.depth = frame.best;
  }
  ex.complete = true;
  return ex;
}

}  // namespace

SnVerdict sn_check(const Term& t, Fuel& fuel, const Theory& theory, ReductionMode mode) {
  Exploration ex = explore(t, fuel, theory, mode);
  SnVerdict v;
  v.visited = ex.done.size();
  if (!ex.complete) {
    v.kind = SnVerdict::Kind::FuelExhausted;
    return v;
  }
  v.max_depth = ex.depth;
  return v;
}

std::optional<std::vector<Term>> reachable_terms(const Term& t, Fuel& fuel, const Theory& theory,
                                                 ReductionMode mode) {
  Exploration ex = explore(t, fuel, theory, mode);
  if (!ex.complete) return std::nullopt;
  std::vector<Term> out;
  out.reserve(ex.done.size());
  for (const auto& [term, depth] : ex.done) out.push_back(term);
  // Deterministic order: the map iteration order is not.
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.hash() < b.hash();
  });
  return out;
}

// Candidate expressions ----------------------------------------------------------

CandidateExpr CandidateExpr::top() {
  static const CandidateExpr t(std::make_shared<const Node>());
  return t;
}

CandidateExpr CandidateExpr::pi(CandidateExpr dom, std::vector<CandidateExpr> cods) {
  Node n;
  n.kind = Kind::Pi;
  n.children.push_back(std::move(dom));
  for (CandidateExpr& c : cods) n.children.push_back(std::move(c));
  return CandidateExpr(std::make_shared<const Node>(std::move(n)));
}

CandidateExpr CandidateExpr::intersect(std::vector<CandidateExpr> members) {
  if (members.empty()) throw std::invalid_argument("intersection of no candidates");
  Node n;
  n.kind = Kind::Intersect;
  n.children = std::move(members);
  return CandidateExpr(std::make_shared<const Node>(std::move(n)));
}

std::vector<CandidateExpr> CandidateExpr::parts() const {
  if (kind() == Kind::Pi) return {node_->children.begin() + 1, node_->children.end()};
  return node_->children;
}

std::uint32_t CandidateExpr::depth() const {
  std::uint32_t d = 0;
  for (const CandidateExpr& c : node_->children) d = std::max(d, c.depth());
  return d + 1;
}

std::string CandidateExpr::to_string() const {
  switch (kind()) {
    case Kind::Top:
      return "T";
    case Kind::Pi: {
      std::string s = "Pi(" + domain().to_string() + ", {";
      const auto cods = parts();
      for (std::size_t i = 0; i < cods.size(); ++i) s += (i ? ", " : "") + cods[i].to_string();
      return s + "})";
    }
    case Kind::Intersect: {
      std::string s = "Inter(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        s += (i ? ", " : "") + node_->children[i].to_string();
      }
      return s + ")";
    }
  }
  return "?";
}

bool operator==(const CandidateExpr& a, const CandidateExpr& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.node_->children == b.node_->children;
}

std::vector<CandidateExpr> enumerate_candidates(std::uint32_t max_depth) {
  std::vector<CandidateExpr> level = {CandidateExpr::top()};
  for (std::uint32_t d = 2; d <= max_depth; ++d) {
    std::vector<CandidateExpr> next = {CandidateExpr::top()};
    auto add = [&next](CandidateExpr c) {
      if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(std::move(c));
    };
    for (const CandidateExpr& a : level) {
      for (const CandidateExpr& b : level) add(CandidateExpr::pi(a, {b}));
      if (level.size() > 1) add(CandidateExpr::pi(a, level));
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        add(CandidateExpr::intersect({level[i], level[j]}));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Yes:
      return "yes";
    case Membership::No:
      return "no";
    case Membership::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

// No dominates Unknown, which dominates Yes.
void meet(Membership& acc, Membership m) {
  if (acc == Membership::No || m == Membership::Yes) return;
  acc = m;
}

}  // namespace

Membership in_candidate(const Term& t, const CandidateExpr& c, Fuel& fuel,
                        const std::vector<Term>& probes) {
  std::optional<std::vector<Term>> reach = reachable_terms(t, fuel);
  if (!reach) return Membership::Unknown;
  Membership acc = Membership::Yes;
  switch (c.kind()) {
    case CandidateExpr::Kind::Top:
      return acc;
    case CandidateExpr::Kind::Intersect:
      for (const CandidateExpr& m : c.parts()) {
        meet(acc, in_candidate(t, m, fuel, probes));
        if (acc == Membership::No) break;
      }
      return acc;
    case CandidateExpr::Kind::Pi: {
      const std::vector<CandidateExpr> cods = c.parts();
      std::vector<Term> members;
      for (const Term& p : probes) {
        if (in_candidate(p, c.domain(), fuel, probes) == Membership::Yes) members.push_back(p);
      }
      for (const Term& r : *reach) {
        if (!r.is(TermKind::Lam)) continue;
        for (const Term& p : members) {
          const Term body = instantiate(r.body(), p);
          for (const CandidateExpr& d : cods) {
            meet(acc, in_candidate(body, d, fuel, probes));
            if (acc == Membership::No) return acc;
          }
        }
      }
      return acc;
    }
  }
  return Membership::Unknown;
}

LemmaVerdict check_variables_lemma(const CandidateExpr& c, Fuel& fuel,
                                   const std::vector<Term>& probes) {
  std::string name = "_x";
  for (bool clash = true; clash;) {
    clash = false;
    for (const Term& p : probes) clash = clash || occurs_free(p, name);
    if (clash) name += "'";
  }
  switch (in_candidate(Term::fvar(name), c, fuel, probes)) {
    case Membership::Yes:
      return LemmaVerdict::Holds;
    case Membership::No:
      return LemmaVerdict::Fails;
    case Membership::Unknown:
      break;
  }
  return LemmaVerdict::Unknown;
}

LemmaVerdict check_closure_lemma(const Term& t, const CandidateExpr& c, Fuel& fuel,
                                 const std::vector<Term>& probes) {
  const Membership pre = in_candidate(t, c, fuel, probes);
  if (pre == Membership::No) return LemmaVerdict::PreconditionUnmet;
  if (pre == Membership::Unknown) return LemmaVerdict::Unknown;
  LemmaVerdict out = LemmaVerdict::Holds;
  for (const Term& r : distinct_reducts(t, Theory{}, ReductionMode::Beta)) {
    const Membership m = in_candidate(r, c, fuel, probes);
    if (m == Membership::No) return LemmaVerdict::Fails;
    if (m == Membership::Unknown) out = LemmaVerdict::Unknown;
  }
  return out;
}

LemmaVerdict check_application_lemma(const Term& t1, const Term& t2, const CandidateExpr& c,
                                     const std::vector<CandidateExpr>& s, Fuel& fuel,
                                     const std::vector<Term>& probes) {
  Membership pre = in_candidate(t1, CandidateExpr::pi(c, s), fuel, probes);
  meet(pre, in_candidate(t2, c, fuel, probes));
  if (pre == Membership::No) return LemmaVerdict::PreconditionUnmet;
  if (pre == Membership::Unknown) return LemmaVerdict::Unknown;
  LemmaVerdict out = LemmaVerdict::Holds;
  const Term app = Term::app(t1, t2);
  for (const CandidateExpr& d : s) {
    const Membership m = in_candidate(app, d, fuel, probes);
    if (m == Membership::No) return LemmaVerdict::Fails;
    if (m == Membership::Unknown) out = LemmaVerdict::Unknown;
  }
  return out;
}

std::uint32_t stt_measure(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      return (t.name() == "imp" || t.name().rfind("forall{", 0) == 0) ? 1 : 0;
    case TermKind::Pi:
    case TermKind::Lam:
    case TermKind::App:
      return stt_measure(t.child(0)) + stt_measure(t.child(1));
    default:
      return 0;
  }
}

namespace {

bool is_redex(const Term& t) { return t.is(TermKind::App) && t.fn().is(TermKind::Lam); }
bool is_variable(const Term& t) { return t.is(TermKind::FVar) || t.is(TermKind::BVar); }

// Loose bound variables shift when a subterm moves under a new binder;
// erase them so that moved redexes still compare equal.
Term erase_loose(const Term& t, std::uint32_t depth = 0) {
  if (t.loose_bound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      return Term::fvar("#loose");
    case TermKind::Pi:
      return Term::pi(t.name(), erase_loose(t.domain(), depth), erase_loose(t.body(), depth + 1));
    case TermKind::Lam:
      return Term::lam(t.name(), erase_loose(t.domain(), depth), erase_loose(t.body(), depth + 1));
    case TermKind::App:
      return Term::app(erase_loose(t.fn(), depth), erase_loose(t.arg(), depth));
    default:
      return t;
  }
}

}  // namespace

bool created_beta_redices_are_trivial(const Term& t, const Theory& theory) {
  for (const Reduct& r : one_step_reducts(t, theory, ReductionMode::BetaR)) {
    if (r.step == "beta") continue;
    const Term& before = subterm_at(t, r.position);
    const Term& after = subterm_at(r.term, r.position);
    std::vector<Term> old;
    for (const auto& [pos, s] : subterm_positions(before)) {
      if (is_redex(s)) old.push_back(erase_loose(s));
    }
    for (const auto& [pos, s] : subterm_positions(after)) {
      if (!is_redex(s)) continue;
      if (std::find(old.begin(), old.end(), erase_loose(s)) != old.end()) continue;
      if (!is_variable(s.arg())) return false;
    }
    // A lambda produced in function position makes a redex one level up.
    if (!r.position.empty() && r.position.back() == 0 && after.is(TermKind::Lam)) {
      Position up(r.position.begin(), r.position.end() - 1);
      const Term& parent = subterm_at(r.term, up);
      if (parent.is(TermKind::App) && !is_redex(subterm_at(t, up)) && !is_variable(parent.arg())) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace pimodulo
