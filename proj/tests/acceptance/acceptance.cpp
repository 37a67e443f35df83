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

// Acceptance run: one PASS/FAIL line per criterion, then a summary. Exit
// status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "oracle.hpp"
#include "pimodulo/candidates.hpp"
#include "pimodulo/generate.hpp"
#include "pimodulo/printer.hpp"
#include "pimodulo/reduction.hpp"
#include "pimodulo/scan.hpp"
#include "pimodulo/syntax.hpp"
#include "pimodulo/typing.hpp"

namespace pimodulo {
namespace {

// Pinned thresholds.
constexpr double kTheoryCheckSeconds = 1.0;
constexpr double kSttSweepSeconds = 300.0;
constexpr double kCcSweepSeconds = 600.0;
constexpr double kConsistencySeconds = 300.0;
constexpr std::size_t kPairs = 200;
constexpr std::uint32_t kPairMaxSize = 8;
constexpr std::size_t kSubstitutions = 1000;
constexpr std::size_t kSnTerms = 5000;
constexpr std::uint32_t kSnMaxSize = 9;
constexpr std::uint64_t kSnFuel = 100'000;
constexpr std::size_t kMeasureTerms = 10'000;
constexpr std::uint32_t kConsistencyMaxSize = 8;
constexpr std::size_t kRoundTripTerms = 10'000;
constexpr std::uint32_t kLawMaxSize = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const Theory& stt() {
  static const Theory th = load_theory("stt");
  return th;
}

const Theory& cc() {
  static const Theory th = load_theory("cc");
  return th;
}

const Theory& theory_of(ModelKind k) { return k == ModelKind::Stt ? stt() : cc(); }

std::string tally(const LemmaTally& t) {
  std::ostringstream s;
  s << t.holds << " hold, " << t.fails << " fail, " << t.unknown << " unknown";
  return s.str();
}

// Criterion 1.
Outcome theory_check() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool pass = true;
  std::size_t mutants = 0;
  std::size_t rejected = 0;
  for (const Theory* th : {&stt(), &cc()}) {
    Fuel fuel;
    TheoryReport report = check_theory(*th, fuel);
    pass = pass && report.ok() && report.error_count() == 0;
    d << th->name << " " << report.error_count() << " errors; ";
    // A constant whose type differs from every rule type in the theory.
    const Term wrong = Term::constant(th == &stt() ? "imp" : "dType");
    for (std::size_t i = 0; i < th->rules.size(); ++i) {
      Theory mutant = *th;
      mutant.rules[i].rhs = wrong;
      Fuel f;
      ++mutants;
      if (!check_theory(mutant, f).ok()) ++rejected;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && rejected == mutants && secs < kTheoryCheckSeconds;
  d << rejected << "/" << mutants << " rhs mutants rejected; " << secs << " s (limit "
    << kTheoryCheckSeconds << " s)";
  return {pass, d.str()};
}

struct Sweep {
  ModelCheckReport report;
  double seconds = 0;
};

Sweep sweep(ModelKind kind) {
  ModelCheckOptions o;
  o.max_algebra_size = 2;
  o.max_size = kPairMaxSize;
  o.pairs = kPairs;
  o.substitutions = kSubstitutions;
  const auto start = std::chrono::steady_clock::now();
  Sweep s;
  s.report = model_check(theory_of(kind), o);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

// Criteria 2 and 3.
Outcome conversion(const Sweep& s, ModelKind kind, double limit) {
  const ModelCheckReport& r = s.report;
  const Theory& th = theory_of(kind);
  std::set<std::string> rules_seen;
  std::size_t generated = 0;
  for (const ConvertiblePair& p : r.pairs) {
    if (p.origin == "reduct" || p.origin == "normal-form") {
      ++generated;
    } else {
      rules_seen.insert(p.origin);
    }
  }
  const LemmaTally& c = r.lemmas.at("conversion");
  const bool pass = r.algebras == 513 && rules_seen.size() == th.rules.size() &&
                    generated == kPairs && c.fails == 0 && c.unknown == 0 && c.holds > 0 &&
                    s.seconds < limit;
  std::ostringstream d;
  d << r.algebras << " algebras, " << rules_seen.size() << "/" << th.rules.size()
    << " rules instantiated, " << generated << " generated pairs (" << r.excluded_pairs
    << " candidates excluded: need a union over E); conversion " << tally(c) << "; lemma1 "
    << tally(r.lemmas.at("lemma1")) << "; lemma2 " << tally(r.lemmas.at("lemma2")) << "; typing "
    << tally(r.lemmas.at("typing")) << "; " << s.seconds << " s (limit " << limit << " s)";
  return {pass, d.str()};
}

// Criterion 4.
Outcome substitution(const Sweep& stt_sweep, const Sweep& cc_sweep) {
  bool pass = true;
  std::ostringstream d;
  for (const Sweep* s : {&stt_sweep, &cc_sweep}) {
    const ModelCheckReport& r = s->report;
    const LemmaTally& t = r.lemmas.at("substitution");
    pass = pass && r.substitutions.size() == kSubstitutions && t.fails == 0 && t.unknown == 0 &&
           t.holds > 0;
    d << to_string(r.kind) << ": " << r.substitutions.size() << " instances ("
      << r.excluded_substitutions << " candidates excluded: need a union over E), " << tally(t)
      << "; ";
  }
  return {pass, d.str()};
}

// Criterion 5.
Outcome strong_normalization() {
  bool pass = true;
  std::ostringstream d;
  for (const Theory* th : {&stt(), &cc()}) {
    for (ReductionMode mode : {ReductionMode::Beta, ReductionMode::BetaR}) {
      SnScanOptions o;
      o.count = kSnTerms;
      o.max_size = kSnMaxSize;
      o.fuel = kSnFuel;
      o.mode = mode;
      SnScanReport r = sn_scan(*th, o);
      pass = pass && r.results.size() == kSnTerms && r.normalizing == kSnTerms &&
             r.exhausted == 0;
      d << th->name << "/" << (mode == ReductionMode::Beta ? "beta" : "betar") << " "
        << r.normalizing << "/" << r.results.size() << " SN (" << r.reducible
        << " reducible, max depth " << r.max_depth << ", pool " << r.pool << "); ";
    }
  }
  const Term delta = Term::lam("x", Term::constant("A"), Term::app(Term::bvar(0), Term::bvar(0)));
  Fuel fuel(kSnFuel);
  const SnVerdict omega = sn_check(Term::app(delta, delta), fuel);
  pass = pass && omega.kind == SnVerdict::Kind::FuelExhausted;
  d << "omega control " << (omega.normalizing() ? "normalizing" : "FuelExhausted");
  return {pass, d.str()};
}

std::vector<Term> sampled_terms(const Theory& th, ModelKind kind, std::size_t count,
                                std::uint64_t seed) {
  TermEnumerator gen(th, default_context(kind, th));
  std::vector<Term> out;
  for (const TypedTerm& t : sample(gen.up_to(kSnMaxSize), count, seed)) out.push_back(t.term);
  return out;
}

// Criterion 6.
Outcome measure() {
  std::ostringstream d;
  const std::vector<Term> stt_terms = sampled_terms(stt(), ModelKind::Stt, kMeasureTerms, 6);
  MeasureReport m = measure_scan(stt(), stt_terms, true);
  bool pass = m.terms == kMeasureTerms && m.rewrite_steps > 0 && m.non_decreasing == 0 &&
              m.nontrivial_created == 0;
  d << "stt " << m.terms << " terms, " << m.rewrite_steps << " rewrite steps, "
    << m.non_decreasing << " non-decreasing, " << m.nontrivial_created
    << " created non-variable redexes; ";

  std::vector<Term> cc_terms = sampled_terms(cc(), ModelKind::Cc, kMeasureTerms, 6);
  TermEnumerator gen(cc(), default_context(ModelKind::Cc, cc()));
  std::vector<TypedTerm> small;
  for (const TypedTerm& t : gen.up_to(5)) small.push_back(t);
  std::set<std::string> rules;
  for (const ConvertiblePair& p : rule_instances(cc(), gen, small, 20, 6)) {
    cc_terms.push_back(p.lhs);
    rules.insert(p.origin);
  }
  MeasureReport c = measure_scan(cc(), cc_terms, false);
  pass = pass && c.rewrite_steps > 0 && c.nontrivial_created == 0 &&
         rules.size() == cc().rules.size();
  d << "cc " << c.terms << " terms (rule lhs instances for " << rules.size() << "/"
    << cc().rules.size() << " rules), " << c.rewrite_steps << " rewrite steps, "
    << c.nontrivial_created << " created non-variable redexes";
  return {pass, d.str()};
}

// Criterion 7.
Outcome consistency() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool pass = true;
  ConsistencyOptions o;
  o.max_size = kConsistencyMaxSize;
  struct Case {
    const Theory* th;
    const char* ctx;
    const char* eps;
  };
  for (const Case& c : {Case{&stt(), "x : o", "eps x"}, Case{&cc(), "x : U_Type", "eps_Type x"}}) {
    const Context ctx = parse_context(c.ctx, *c.th);
    const Term target = parse_term(c.eps, *c.th, ctx);
    const std::string eps(c.eps);
    const Term control = parse_term(eps + " -> " + eps, *c.th, ctx);
    ConsistencyReport r = consistency_scan(*c.th, ctx, target, o);
    ConsistencyReport k = consistency_scan(*c.th, ctx, control, o);
    const Term identity = Term::lam("a", target, Term::bvar(0));
    const bool control_ok = k.inhabitants.size() == 1 && k.inhabitants.front() == identity;
    pass = pass && r.inhabitants.empty() && !r.truncated && control_ok;
    d << c.th->name << ": " << r.inhabitants.size() << " inhabitants of " << c.eps << " among "
      << r.enumerated << " terms; control found " << k.inhabitants.size();
    if (!k.inhabitants.empty()) d << " (" << print_term(k.inhabitants.front()) << ")";
    d << "; ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && secs < kConsistencySeconds;
  d << secs << " s (limit " << kConsistencySeconds << " s)";
  return {pass, d.str()};
}

// Criterion 8.
Outcome kernel() {
  std::ostringstream d;
  bool pass = true;

  // Round trip through the printer and parser on generated well-typed terms.
  std::size_t round_trips = 0;
  std::size_t round_trip_failures = 0;
  for (ModelKind kind : {ModelKind::Stt, ModelKind::Cc}) {
    const Theory& th = theory_of(kind);
    const Context ctx = default_context(kind, th);
    for (const Term& t : sampled_terms(th, kind, kRoundTripTerms / 2, 8)) {
      ++round_trips;
      try {
        if (!(parse_term(print_term(t), th, ctx) == t)) ++round_trip_failures;
      } catch (const std::exception&) {
        ++round_trip_failures;
      }
    }
  }
  pass = pass && round_trips == kRoundTripTerms && round_trip_failures == 0;
  d << round_trips << " round trips, " << round_trip_failures << " failures; ";

  // Substitution against the named oracle, composition and alpha laws on
  // every raw term up to the size bound.
  const Term x = Term::fvar("x");
  const Term y = Term::fvar("y");
  const Term c = Term::constant("c");
  oracle::RawTerms raw({x, y, c, Term::sort_type()});
  const std::vector<Term> us = {y, Term::app(y, c), Term::lam("z", c, Term::app(Term::bvar(0), x))};
  const std::vector<Term> vs = {c, Term::lam("z", c, Term::bvar(0)), Term::fvar("w")};
  std::size_t law_checks = 0;
  std::size_t law_failures = 0;
  for (std::uint32_t size = 1; size <= kLawMaxSize; size += 2) {
    for (const Term& t : raw.of_size(size)) {
      if (!t.is_locally_closed()) continue;
      for (const Term& u : us) {
        ++law_checks;
        if (!(substitute(t, "x", u) == oracle::substitute(t, "x", u))) ++law_failures;
        for (const Term& v : vs) {
          if (occurs_free(v, "x")) continue;
          ++law_checks;
          Term lhs = substitute(substitute(t, "x", u), "y", v);
          Term rhs = substitute(substitute(t, "y", v), "x", substitute(u, "y", v));
          if (!(lhs == rhs)) ++law_failures;
        }
      }
      ++law_checks;
      oracle::Namer namer;
      if (!(oracle::from_named(oracle::to_named(t, namer)) == t)) ++law_failures;
      ++law_checks;
      if (!(instantiate(abstract(t, "x"), x) == t)) ++law_failures;
    }
  }
  pass = pass && law_failures == 0 && law_checks > 0;
  d << law_checks << " substitution/alpha checks to size " << kLawMaxSize << ", " << law_failures
    << " failures; ";

  // Subject reduction.
  std::size_t reducts = 0;
  std::size_t sr_failures = 0;
  for (ModelKind kind : {ModelKind::Stt, ModelKind::Cc}) {
    const Theory& th = theory_of(kind);
    const Context ctx = default_context(kind, th);
    TermEnumerator gen(th, ctx);
    for (const TypedTerm& tt : gen.up_to(kLawMaxSize)) {
      for (const Reduct& r : one_step_reducts(tt.term, th, ReductionMode::BetaR)) {
        ++reducts;
        try {
          Fuel f1;
          Term a = infer(th, ctx, r.term, f1);
          Fuel f2;
          if (convertible(a, tt.type, th, f2) != Convertibility::Convertible) ++sr_failures;
        } catch (const TypeError&) {
          ++sr_failures;
        }
      }
    }
  }
  pass = pass && reducts > 0 && sr_failures == 0;
  d << reducts << " reducts type-checked for subject reduction, " << sr_failures << " failures";
  return {pass, d.str()};
}

int run() {
  int failed = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %d: %s  %s  [%s] (%.1f s)\n", n, o.pass ? "PASS" : "FAIL", title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  };
  report(1, "theory well-typedness", theory_check);
  Sweep stt_sweep;
  Sweep cc_sweep;
  report(2, "conversion sweep, stt", [&] {
    stt_sweep = sweep(ModelKind::Stt);
    return conversion(stt_sweep, ModelKind::Stt, kSttSweepSeconds);
  });
  report(3, "conversion sweep, cc", [&] {
    cc_sweep = sweep(ModelKind::Cc);
    return conversion(cc_sweep, ModelKind::Cc, kCcSweepSeconds);
  });
  report(4, "substitution lemmas", [&] {
    if (stt_sweep.report.lemmas.empty() || cc_sweep.report.lemmas.empty()) {
      return Outcome{false, "sweep did not run"};
    }
    return substitution(stt_sweep, cc_sweep);
  });
  report(5, "strong normalization", strong_normalization);
  report(6, "rewrite measure and created redexes", measure);
  report(7, "consistency scan", consistency);
  report(8, "kernel properties", kernel);
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed;
}

}  // namespace
}  // namespace pimodulo

int main() { return pimodulo::run(); }
