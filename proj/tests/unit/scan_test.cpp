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

#include <gtest/gtest.h>

#include "pimodulo/printer.hpp"
#include "pimodulo/scan.hpp"
#include "pimodulo/syntax.hpp"

namespace pimodulo {
namespace {

const Theory& stt() {
  static const Theory th = load_theory("stt");
  return th;
}

const Theory& cc() {
  static const Theory th = load_theory("cc");
  return th;
}

ModelCheckOptions small() {
  ModelCheckOptions o;
  o.max_algebra_size = 1;
  o.max_size = 6;
  o.pairs = 20;
  o.substitutions = 50;
  o.discipline_terms = 50;
  return o;
}

TEST(Scan, ModelKind) {
  EXPECT_EQ(model_kind(stt()), ModelKind::Stt);
  EXPECT_EQ(model_kind(cc()), ModelKind::Cc);
  EXPECT_FALSE(model_kind(parse_theory("A : Type\n")).has_value());
  EXPECT_EQ(print_context(default_context(ModelKind::Stt, stt())), "a : o, b : o");
  EXPECT_EQ(print_context(default_context(ModelKind::Cc, cc())), "K : U_Kind, T : U_Type");
  EXPECT_THROW(model_check(parse_theory("A : Type\n"), small()), std::invalid_argument);
}

TEST(Scan, ModelCheckSmallGrid) {
  for (const Theory* th : {&stt(), &cc()}) {
    ModelCheckReport r = model_check(*th, small());
    EXPECT_TRUE(r.ok()) << th->name;
    EXPECT_EQ(r.algebras, 1U);
    EXPECT_EQ(r.lemmas.size(), 5U);
    EXPECT_GT(r.lemmas.at("conversion").holds, 0U);
    EXPECT_EQ(r.lemmas.at("conversion").fails, 0U);
    EXPECT_GT(r.lemmas.at("substitution").holds, 0U);
  }
}

TEST(Scan, ModelCheckFindsMutation) {
  std::string text(*builtin_theory_text("stt"));
  const std::string from = "--> eps X -> eps Y";
  text.replace(text.find(from), from.size(), "--> eps Y -> eps X");
  Theory mutant = parse_theory(text);
  ModelCheckOptions o = small();
  o.max_algebra_size = 2;
  ModelCheckReport r = model_check(mutant, o);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.counterexample->lemma, "conversion");
  EXPECT_FALSE(r.counterexample->algebra.empty());
  EXPECT_GT(r.lemmas.at("conversion").fails, 0U);
}

TEST(Scan, ModelCheckIsIndependentOfJobs) {
  ModelCheckOptions a = small();
  a.max_algebra_size = 2;
  ModelCheckOptions b = a;
  b.jobs = 3;
  ModelCheckReport ra = model_check(stt(), a);
  ModelCheckReport rb = model_check(stt(), b);
  for (const auto& [name, t] : ra.lemmas) {
    EXPECT_EQ(t.holds, rb.lemmas.at(name).holds) << name;
    EXPECT_EQ(t.unknown, rb.lemmas.at(name).unknown) << name;
  }
}

TEST(Scan, Consistency) {
  const Context ctx = parse_context("x : o", stt());
  ConsistencyOptions o;
  o.max_size = 6;
  ConsistencyReport r = consistency_scan(stt(), ctx, parse_term("eps x", stt(), ctx), o);
  EXPECT_TRUE(r.inhabitants.empty());
  EXPECT_GT(r.normal, 0U);
  ConsistencyReport c = consistency_scan(stt(), ctx, parse_term("eps x -> eps x", stt(), ctx), o);
  ASSERT_EQ(c.inhabitants.size(), 1U);
  EXPECT_EQ(c.inhabitants.front(), parse_term("\\h : eps x. h", stt(), ctx));
  // eps (imp x x) is the same type modulo the rules.
  ConsistencyReport d = consistency_scan(stt(), ctx, parse_term("eps (imp x x)", stt(), ctx), o);
  EXPECT_EQ(d.inhabitants.size(), 1U);
}

TEST(Scan, SnScanDeterministic) {
  SnScanOptions o;
  o.count = 300;
  o.max_size = 7;
  SnScanReport a = sn_scan(stt(), o);
  o.jobs = 2;
  SnScanReport b = sn_scan(stt(), o);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].term, b.results[i].term);
    EXPECT_EQ(a.results[i].verdict.max_depth, b.results[i].verdict.max_depth);
  }
  EXPECT_EQ(a.exhausted, 0U);
  EXPECT_GT(a.reducible, 0U);
}

TEST(Scan, Measure) {
  std::vector<Term> terms = {parse_term("eps (imp a b)", stt()),
                             parse_term("eps (forall{o} (\\x : o. imp x x))", stt()),
                             parse_term("imp a b", stt())};
  MeasureReport r = measure_scan(stt(), terms, true);
  EXPECT_EQ(r.terms, 3U);
  EXPECT_EQ(r.rewrite_steps, 2U);
  EXPECT_EQ(r.non_decreasing, 0U);
  EXPECT_EQ(r.nontrivial_created, 0U);
}

}  // namespace
}  // namespace pimodulo
