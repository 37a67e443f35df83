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

#include "pimodulo/scan.hpp"

#include <stdexcept>

#include "pimodulo/algebra.hpp"
#include "pimodulo/model_cc.hpp"
#include "pimodulo/model_stt.hpp"
#include "pimodulo/parallel.hpp"
#include "pimodulo/printer.hpp"
#include "pimodulo/semantic.hpp"
#include "pimodulo/syntax.hpp"

namespace pimodulo {

using semantic::Valuation;

std::optional<ModelKind> model_kind(const Theory& theory) {
  const Context& sig = theory.signature;
  if (sig.contains("eps_Type") && sig.contains("eps_Kind") && sig.contains("U_Kind")) {
    return ModelKind::Cc;
  }
  if (sig.contains("eps") && sig.contains("imp") && sig.contains("o")) return ModelKind::Stt;
  return std::nullopt;
}

std::string_view to_string(ModelKind kind) { return kind == ModelKind::Stt ? "stt" : "cc"; }

Context default_context(ModelKind kind, const Theory& theory) {
  return parse_context(kind == ModelKind::Stt ? "a : o, b : o" : "K : U_Kind, T : U_Type", theory);
}

void LemmaTally::add(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::Holds:
      ++holds;
      break;
    case LemmaVerdict::Fails:
      ++fails;
      break;
    case LemmaVerdict::Unknown:
      ++unknown;
      break;
    case LemmaVerdict::PreconditionUnmet:
      ++skipped;
      break;
  }
}

void LemmaTally::merge(const LemmaTally& o) {
  holds += o.holds;
  fails += o.fails;
  unknown += o.unknown;
  skipped += o.skipped;
}

namespace {

std::string show(const Valuation& v) {
  std::string s;
  for (const auto& [name, value] : v) {
    if (!s.empty()) s += ", ";
    s += name + " = " + value.to_string();
  }
  return s;
}

// Runs one check. Evaluation beyond the finite fragment is Unknown; any
// other semantic error is a failure with its message kept.
template <class F>
LemmaVerdict guarded(F&& check, std::string& error) {
  try {
    return check();
  } catch (const semantic::UnenumerableUnion&) {
    return LemmaVerdict::Unknown;
  } catch (const semantic::SizeLimitExceeded&) {
    return LemmaVerdict::Unknown;
  } catch (const semantic::SemanticError& e) {
    error = e.what();
    return LemmaVerdict::Fails;
  }
}

// Whether evaluation stays in the finite fragment on a one-point algebra.
template <class F>
bool evaluable(F&& check) {
  try {
    check();
    return true;
  } catch (const semantic::UnenumerableUnion&) {
    return false;
  } catch (const semantic::SizeLimitExceeded&) {
    return false;
  } catch (const semantic::SemanticError&) {
    return true;
  }
}

std::vector<FiniteAlgebra> algebra_grid(const ModelCheckOptions& o) {
  std::vector<FiniteAlgebra> out;
  for (unsigned n = 1; n <= o.max_algebra_size; ++n) {
    if (n <= 2) {
      std::vector<FiniteAlgebra> all = enumerate_full_algebras(n);
      out.insert(out.end(), all.begin(), all.end());
    } else {
      std::vector<FiniteAlgebra> some = sample_full_algebras(n, o.sampled_algebras, o.seed + n);
      out.insert(out.end(), some.begin(), some.end());
    }
  }
  return out;
}

struct AlgebraOutcome {
  std::map<std::string, LemmaTally> lemmas;
  std::optional<Counterexample> counterexample;
};

struct Workload {
  const Theory* theory = nullptr;
  const Context* ctx = nullptr;
  const ModelCheckOptions* options = nullptr;
  const std::vector<ConvertiblePair>* pairs = nullptr;
  const std::vector<SubstitutionInstance>* substitutions = nullptr;
  const std::vector<TypedTerm>* discipline = nullptr;
};

class Recorder {
 public:
  Recorder(AlgebraOutcome& out, const FiniteAlgebra& alg) : out_(out), alg_(alg) {}

  void record(const std::string& lemma, LemmaVerdict v, const std::string& error,
              const std::string& valuation, const std::string& lhs, const std::string& rhs) {
    out_.lemmas[lemma].add(v);
    if (v != LemmaVerdict::Fails || out_.counterexample) return;
    out_.counterexample =
        Counterexample{lemma, write_algebra(alg_), valuation, lhs, rhs, error};
  }

 private:
  AlgebraOutcome& out_;
  const FiniteAlgebra& alg_;
};

AlgebraOutcome run_stt(const Workload& w, const FiniteAlgebra& alg) {
  AlgebraOutcome out;
  Recorder rec(out, alg);
  const SttModel m(*w.theory, alg);
  const std::vector<Valuation> phis = m.valuations(*w.ctx, w.options->valuation_limit, w.options->seed);
  for (const ConvertiblePair& p : *w.pairs) {
    for (const Valuation& phi : phis) {
      std::string err;
      LemmaVerdict v = guarded([&] { return check_conversion_stt(m, p.lhs, p.rhs, phi); }, err);
      rec.record("conversion", v, err, show(phi), print_term(p.lhs), print_term(p.rhs));
    }
  }
  for (std::size_t i = 0; i < w.substitutions->size(); ++i) {
    const SubstitutionInstance& s = (*w.substitutions)[i];
    const Valuation& phi = phis[i % phis.size()];
    std::string err;
    LemmaVerdict v = guarded([&] { return check_substitution_stt(m, s.t, s.x, s.u, phi); }, err);
    rec.record("substitution", v, err, show(phi), print_term(s.t), s.x + " := " + print_term(s.u));
  }
  for (std::size_t i = 0; i < w.discipline->size(); ++i) {
    const TypedTerm& t = (*w.discipline)[i];
    const Valuation& phi = phis[i % phis.size()];
    std::string err;
    LemmaVerdict v =
        guarded([&] { return check_typing_discipline_stt(m, t.term, t.type, phi); }, err);
    rec.record("typing", v, err, show(phi), print_term(t.term), print_term(t.type));
  }
  return out;
}

AlgebraOutcome run_cc(const Workload& w, const FiniteAlgebra& alg) {
  AlgebraOutcome out;
  Recorder rec(out, alg);
  const CcModel m(alg);
  const ModelCheckOptions& o = *w.options;
  const std::vector<Valuation> psis = m.psi_valuations(*w.ctx, o.psi_limit, o.seed);
  std::vector<std::vector<Valuation>> phis;
  for (const Valuation& psi : psis) phis.push_back(m.valuations(*w.ctx, psi, o.valuation_limit, o.seed));
  auto show2 = [](const Valuation& psi, const Valuation& phi) {
    return "psi {" + show(psi) + "} phi {" + show(phi) + "}";
  };
  for (std::size_t k = 0; k < psis.size(); ++k) {
    for (const ConvertiblePair& p : *w.pairs) {
      for (const Valuation& phi : phis[k]) {
        std::string err;
        LemmaVerdict v =
            guarded([&] { return check_conversion_cc(m, p.lhs, p.rhs, phi, psis[k]); }, err);
        rec.record("conversion", v, err, show2(psis[k], phi), print_term(p.lhs), print_term(p.rhs));
      }
    }
  }
  for (std::size_t i = 0; i < w.substitutions->size(); ++i) {
    const SubstitutionInstance& s = (*w.substitutions)[i];
    const std::size_t k = i % psis.size();
    if (phis[k].empty()) continue;
    const Valuation& phi = phis[k][(i / psis.size()) % phis[k].size()];
    std::string err;
    LemmaVerdict v =
        guarded([&] { return check_substitution_cc(m, s.t, s.x, s.u, phi, psis[k]); }, err);
    rec.record("substitution", v, err, show2(psis[k], phi), print_term(s.t),
               s.x + " := " + print_term(s.u));
  }
  for (std::size_t i = 0; i < w.discipline->size(); ++i) {
    const TypedTerm& t = (*w.discipline)[i];
    const Valuation& psi = psis[i % psis.size()];
    std::string err;
    LemmaVerdict v = guarded([&] { return check_typing_discipline_cc(m, t.term, t.type, psi); }, err);
    rec.record("typing", v, err, "psi {" + show(psi) + "}", print_term(t.term), print_term(t.type));
  }
  return out;
}

}  // namespace

ModelCheckReport model_check(const Theory& theory, const ModelCheckOptions& options) {
  const std::optional<ModelKind> kind = model_kind(theory);
  if (!kind) throw std::invalid_argument("no built-in model for theory '" + theory.name + "'");
  ModelCheckReport report;
  report.kind = *kind;
  report.context = options.context ? *options.context : default_context(*kind, theory);
  const Context& ctx = report.context;

  TermEnumerator gen(theory, ctx);
  const std::vector<TypedTerm> pool = gen.up_to(options.max_size);
  const FiniteAlgebra probe = AlgebraEnumerator(1).at(0);
  const SttModel probe_stt(theory, probe);
  const CcModel probe_cc(probe);
  const Valuation probe_psi = probe_cc.default_psi(ctx);
  const Valuation probe_phi = *kind == ModelKind::Stt
                                  ? probe_stt.valuations(ctx, 1, options.seed).front()
                                  : probe_cc.valuations(ctx, probe_psi, 1, options.seed).front();

  // Convertible pairs: rule instances first, then reducts of generated terms.
  auto pair_ok = [&](const ConvertiblePair& p) {
    return evaluable([&] {
      if (*kind == ModelKind::Stt) return check_conversion_stt(probe_stt, p.lhs, p.rhs, probe_phi);
      return check_conversion_cc(probe_cc, p.lhs, p.rhs, probe_phi, probe_psi);
    });
  };
  std::vector<TypedTerm> small;
  for (const TypedTerm& t : pool) {
    if (t.term.size() <= 5) small.push_back(t);
  }
  for (const ConvertiblePair& p :
       rule_instances(theory, gen, small, options.rule_instances_per_rule, options.seed)) {
    if (pair_ok(p)) {
      report.pairs.push_back(p);
    } else {
      ++report.excluded_pairs;
    }
  }
  std::size_t generated = 0;
  for (const ConvertiblePair& p :
       reduction_pairs(theory, gen.mode(), pool, options.pairs * 4, options.seed)) {
    if (generated == options.pairs) break;
    if (!pair_ok(p)) {
      ++report.excluded_pairs;
      continue;
    }
    report.pairs.push_back(p);
    ++generated;
  }

  for (const SubstitutionInstance& s :
       substitution_instances(ctx, gen, pool, options.substitutions * 2, options.seed)) {
    if (report.substitutions.size() == options.substitutions) break;
    const bool ok = evaluable([&] {
      if (*kind == ModelKind::Stt) return check_substitution_stt(probe_stt, s.t, s.x, s.u, probe_phi);
      return check_substitution_cc(probe_cc, s.t, s.x, s.u, probe_phi, probe_psi);
    });
    if (ok) {
      report.substitutions.push_back(s);
    } else {
      ++report.excluded_substitutions;
    }
  }

  const std::vector<TypedTerm> discipline = sample(pool, options.discipline_terms, options.seed);

  // Structural lemmas do not depend on the algebra.
  LemmaTally& l1 = report.lemmas["lemma1"];
  LemmaTally& l2 = report.lemmas["lemma2"];
  for (const TypedTerm& t : pool) {
    l1.add(*kind == ModelKind::Stt ? check_lemma1_stt(probe_stt, t.term)
                                   : check_lemma1_cc(probe_cc, t.term));
  }
  for (const SubstitutionInstance& s : report.substitutions) {
    l2.add(*kind == ModelKind::Stt ? check_lemma2_stt(probe_stt, s.t, s.x, s.u)
                                   : check_lemma2_cc(probe_cc, s.t, s.x, s.u));
  }
  if (l1.fails || l2.fails) {
    report.counterexample = Counterexample{l1.fails ? "lemma1" : "lemma2", "", "", "", "",
                                           "structural lemma failed"};
  }

  const std::vector<FiniteAlgebra> algebras = algebra_grid(options);
  report.algebras = algebras.size();
  Workload w{&theory, &ctx, &options, &report.pairs, &report.substitutions, &discipline};
  std::vector<AlgebraOutcome> outcomes =
      parallel_map(algebras.size(), options.jobs, [&](std::size_t i) {
        return *kind == ModelKind::Stt ? run_stt(w, algebras[i]) : run_cc(w, algebras[i]);
      });
  for (const AlgebraOutcome& o : outcomes) {
    for (const auto& [lemma, tally] : o.lemmas) report.lemmas[lemma].merge(tally);
    if (o.counterexample && !report.counterexample) report.counterexample = o.counterexample;
  }
  return report;
}

ConsistencyReport consistency_scan(const Theory& theory, const Context& ctx, const Term& target,
                                   const ConsistencyOptions& options) {
  GeneratorOptions g;
  g.max_binder_depth = options.max_size;
  g.max_terms_per_bucket = 0;
  g.type_fuel = options.fuel;
  TermEnumerator gen(theory, ctx, g);
  const Term goal = gen.normal_type(target);
  if (goal.is_null()) throw std::runtime_error("fuel exhausted normalizing the target type");
  ConsistencyReport report;
  for (std::uint32_t s = 1; s <= options.max_size; ++s) {
    for (const TypedTerm& t : gen.of_size(s)) {
      ++report.enumerated;
      if (!is_normal(t.term, theory, gen.mode())) continue;
      ++report.normal;
      if (t.type == goal) report.inhabitants.push_back(t.term);
    }
  }
  report.truncated = gen.truncated();
  return report;
}

SnScanReport sn_scan(const Theory& theory, const SnScanOptions& options) {
  Context ctx;
  if (options.context) {
    ctx = *options.context;
  } else if (auto kind = model_kind(theory)) {
    ctx = default_context(*kind, theory);
  }
  TermEnumerator gen(theory, ctx);
  const std::vector<TypedTerm> pool = gen.up_to(options.max_size);
  // Half the sample comes from terms with a redex; a uniform draw is
  // dominated by normal forms.
  std::vector<TypedTerm> reducible;
  for (const TypedTerm& t : pool) {
    if (!is_normal(t.term, theory, options.mode)) reducible.push_back(t);
  }
  std::vector<TypedTerm> terms = sample(reducible, options.count / 2, options.seed);
  for (TypedTerm& t : sample(pool, options.count - terms.size(), options.seed + 1)) {
    terms.push_back(std::move(t));
  }
  SnScanReport report;
  report.pool = pool.size();
  report.reducible_pool = reducible.size();
  report.results = parallel_map(terms.size(), options.jobs, [&](std::size_t i) {
    Fuel fuel(options.fuel);
    return SnScanResult{terms[i].term, sn_check(terms[i].term, fuel, theory, options.mode)};
  });
  for (const SnScanResult& r : report.results) {
    if (r.verdict.normalizing()) {
      ++report.normalizing;
      if (r.verdict.max_depth > 0) ++report.reducible;
      report.max_depth = std::max(report.max_depth, r.verdict.max_depth);
    } else {
      ++report.exhausted;
    }
  }
  return report;
}

MeasureReport measure_scan(const Theory& theory, const std::vector<Term>& terms, bool measure) {
  MeasureReport report;
  for (const Term& t : terms) {
    ++report.terms;
    bool offending = false;
    const std::uint32_t before = stt_measure(t);
    for (const Reduct& r : one_step_reducts(t, theory, ReductionMode::BetaR)) {
      if (r.step == "beta") continue;
      ++report.rewrite_steps;
      if (measure && stt_measure(r.term) >= before) {
        ++report.non_decreasing;
        offending = true;
      }
    }
    if (!created_beta_redices_are_trivial(t, theory)) {
      ++report.nontrivial_created;
      offending = true;
    }
    if (offending) report.offenders.push_back(t);
  }
  return report;
}

}  // namespace pimodulo
