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

#include "pimodulo/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace pimodulo {

struct TermEnumerator::Bucket {
  std::vector<TypedTerm> terms;
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> by_type;

  void add(TypedTerm t) {
    by_type[t.type].push_back(terms.size());
    terms.push_back(std::move(t));
  }
};

struct TermEnumerator::Scope {
  Context ctx;
  std::uint32_t depth = 0;
  std::map<std::uint32_t, std::unique_ptr<Bucket>> buckets;
  std::unordered_map<Term, std::unique_ptr<Scope>, TermHash> children;
};

TermEnumerator::TermEnumerator(Theory theory, Context ctx, GeneratorOptions options)
    : theory_(std::move(theory)),
      ctx_(std::move(ctx)),
      options_(options),
      mode_(theory_.rules.empty() ? ReductionMode::Beta : ReductionMode::BetaR) {}

TermEnumerator::~TermEnumerator() = default;

Term TermEnumerator::normal_type(const Term& t) const {
  Fuel fuel(options_.type_fuel);
  NormalizeResult r = normalize(t, theory_, mode_, fuel);
  if (r.exhausted) return Term();
  return r.term;
}

TermEnumerator::Scope& TermEnumerator::root() {
  if (!root_) {
    root_ = std::make_unique<Scope>();
    root_->ctx = ctx_;
  }
  return *root_;
}

TermEnumerator::Scope& TermEnumerator::child(Scope& parent, const Term& domain) {
  auto it = parent.children.find(domain);
  if (it != parent.children.end()) return *it->second;
  auto scope = std::make_unique<Scope>();
  scope->ctx = parent.ctx;
  scope->ctx.push("_v" + std::to_string(parent.ctx.size()), domain);
  scope->depth = parent.depth + 1;
  Scope& ref = *scope;
  parent.children.emplace(domain, std::move(scope));
  return ref;
}

const TermEnumerator::Bucket& TermEnumerator::bucket(Scope& scope, std::uint32_t size) {
  auto it = scope.buckets.find(size);
  if (it != scope.buckets.end()) return *it->second;
  auto b = std::make_unique<Bucket>();
  fill(scope, size, *b);
  const Bucket& ref = *b;
  scope.buckets.emplace(size, std::move(b));
  return ref;
}

void TermEnumerator::fill(Scope& scope, std::uint32_t size, Bucket& out) {
  const std::size_t cap = options_.max_terms_per_bucket;
  auto full = [&] {
    if (cap != 0 && out.terms.size() >= cap) {
      truncated_ = true;
      return true;
    }
    return false;
  };
  auto add = [&](Term term, const Term& type) {
    if (type.is_null()) return;
    out.add({std::move(term), type});
  };
  if (size == 0) return;
  if (size == 1) {
    if (options_.include_type_sort) add(Term::sort_type(), Term::sort_kind());
    for (const Declaration& d : theory_.signature) add(Term::constant(d.name), normal_type(d.type));
    for (const Declaration& d : scope.ctx) add(Term::fvar(d.name), normal_type(d.type));
    return;
  }
  // Applications.
  for (std::uint32_t i = 1; i + 1 < size; ++i) {
    const Bucket& fns = bucket(scope, i);
    const Bucket& args = bucket(scope, size - 1 - i);
    for (const TypedTerm& f : fns.terms) {
      if (!f.type.is(TermKind::Pi)) continue;
      auto it = args.by_type.find(f.type.domain());
      if (it == args.by_type.end()) continue;
      for (std::size_t k : it->second) {
        if (full()) return;
        const TypedTerm& a = args.terms[k];
        add(Term::app(f.term, a.term), normal_type(instantiate(f.type.body(), a.term)));
      }
    }
  }
  if (scope.depth >= options_.max_binder_depth) return;
  // Abstractions and products.
  for (std::uint32_t i = 1; i + 1 < size; ++i) {
    const std::vector<TypedTerm> domains = bucket(scope, i).terms;
    for (const TypedTerm& a : domains) {
      if (!a.type.is(TermKind::Type)) continue;
      Scope& inner = child(scope, a.term);
      const std::string& name = inner.ctx[inner.ctx.size() - 1].name;
      const Term dom_nf = normal_type(a.term);
      if (dom_nf.is_null()) continue;
      const Bucket& bodies = bucket(inner, size - 1 - i);
      for (const TypedTerm& b : bodies.terms) {
        if (full()) return;
        if (!b.type.is(TermKind::Kind)) {
          add(Term::lam("x", a.term, abstract(b.term, name)),
              Term::pi("x", dom_nf, abstract(b.type, name)));
        }
        if (b.type.is_sort()) add(Term::pi("z", a.term, abstract(b.term, name)), b.type);
      }
    }
  }
}

const std::vector<TypedTerm>& TermEnumerator::of_size(std::uint32_t size) {
  return bucket(root(), size).terms;
}

std::vector<TypedTerm> TermEnumerator::up_to(std::uint32_t max_size) {
  std::vector<TypedTerm> out;
  for (std::uint32_t s = 1; s <= max_size; ++s) {
    const auto& level = of_size(s);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<TypedTerm> sample(const std::vector<TypedTerm>& pool, std::size_t count,
                              std::uint64_t seed) {
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  if (idx.size() > count) idx.resize(count);
  std::vector<TypedTerm> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(pool[i]);
  return out;
}

std::vector<ConvertiblePair> reduction_pairs(const Theory& theory, ReductionMode mode,
                                             const std::vector<TypedTerm>& pool,
                                             std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ConvertiblePair> out;
  for (const TypedTerm& t : sample(pool, pool.size(), seed)) {
    if (out.size() >= count) break;
    std::vector<Reduct> first = one_step_reducts(t.term, theory, mode);
    if (first.empty()) continue;
    const unsigned how = static_cast<unsigned>(rng() % 4);
    if (how == 3) {
      Fuel fuel(100'000);
      NormalizeResult r = normalize(t.term, theory, mode, fuel);
      if (r.exhausted) continue;
      out.push_back({t.term, r.term, "normal-form"});
      continue;
    }
    Term u = first[rng() % first.size()].term;
    for (unsigned step = 0; step < how; ++step) {
      std::vector<Reduct> next = one_step_reducts(u, theory, mode);
      if (next.empty()) break;
      u = next[rng() % next.size()].term;
    }
    out.push_back({t.term, u, "reduct"});
  }
  return out;
}

namespace {

std::unordered_map<Term, std::vector<std::size_t>, TermHash> index_by_type(
    const std::vector<TypedTerm>& pool) {
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> by_type;
  for (std::size_t i = 0; i < pool.size(); ++i) by_type[pool[i].type].push_back(i);
  return by_type;
}

}  // namespace

std::vector<ConvertiblePair> rule_instances(const Theory& theory, const TermEnumerator& types,
                                            const std::vector<TypedTerm>& pool,
                                            std::size_t per_rule, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto by_type = index_by_type(pool);
  std::vector<ConvertiblePair> out;
  for (const RewriteRule& rule : theory.rules) {
    std::size_t made = 0;
    for (std::size_t attempt = 0; attempt < per_rule * 10 && made < per_rule; ++attempt) {
      std::vector<std::pair<std::string, Term>> sigma;
      bool ok = true;
      for (const Declaration& d : rule.context) {
        const Term needed = types.normal_type(substitute(d.type, sigma));
        auto it = needed.is_null() ? by_type.end() : by_type.find(needed);
        if (it == by_type.end()) {
          ok = false;
          break;
        }
        sigma.emplace_back(d.name, pool[it->second[rng() % it->second.size()]].term);
      }
      if (!ok) continue;
      out.push_back({substitute(rule.lhs, sigma), substitute(rule.rhs, sigma), rule.id});
      ++made;
    }
  }
  return out;
}

std::vector<SubstitutionInstance> substitution_instances(const Context& ctx,
                                                         const TermEnumerator& types,
                                                         const std::vector<TypedTerm>& pool,
                                                         std::size_t count, std::uint64_t seed) {
  std::vector<SubstitutionInstance> out;
  if (pool.empty()) return out;
  std::vector<std::pair<std::string, Term>> eligible;
  for (const Declaration& d : ctx) {
    bool depended_on = false;
    for (const Declaration& other : ctx) depended_on = depended_on || occurs_free(other.type, d.name);
    if (!depended_on) eligible.emplace_back(d.name, types.normal_type(d.type));
  }
  const auto by_type = index_by_type(pool);
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < count * 50 && out.size() < count; ++attempt) {
    const TypedTerm& t = pool[rng() % pool.size()];
    std::vector<const std::pair<std::string, Term>*> here;
    for (const auto& e : eligible) {
      if (occurs_free(t.term, e.first)) here.push_back(&e);
    }
    if (here.empty()) continue;
    const auto& [x, type] = *here[rng() % here.size()];
    auto it = by_type.find(type);
    if (it == by_type.end()) continue;
    std::vector<std::size_t> us;
    for (std::size_t i : it->second) {
      if (!occurs_free(pool[i].term, x)) us.push_back(i);
    }
    if (us.empty()) continue;
    out.push_back({t.term, x, pool[us[rng() % us.size()]].term});
  }
  return out;
}

}  // namespace pimodulo
