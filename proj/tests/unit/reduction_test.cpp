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

#include <algorithm>

#include "oracle.hpp"
#include "pimodulo/printer.hpp"
#include "pimodulo/reduction.hpp"
#include "pimodulo/syntax.hpp"

namespace pimodulo {
namespace {

Term parse(const std::string& s, const Theory& th = {}) { return parse_term(s, th); }

const Theory& stt() {
  static const Theory th = load_theory("stt");
  return th;
}

Term church(int n) {
  std::string body = "x";
  for (int i = 0; i < n; ++i) body = "f (" + body + ")";
  return parse("\\f : A -> A. \\x : A. " + body);
}

TEST(Fuel, ConsumesExactly) {
  Fuel f(2);
  EXPECT_TRUE(f.consume());
  EXPECT_TRUE(f.consume());
  EXPECT_FALSE(f.consume());
  EXPECT_TRUE(f.exhausted());
  EXPECT_EQ(f.spent(), 2U);
}

TEST(Reduction, BetaRoot) {
  EXPECT_EQ(beta_root(parse("(\\x : A. f x x) a")), parse("f a a"));
  EXPECT_FALSE(beta_root(parse("f a")).has_value());
}

TEST(Reduction, ChurchArithmetic) {
  // 2 2 = 4 in the untyped reading, with annotations carried along.
  Term two = church(2);
  Term mult = Term::app(two, two);
  Fuel fuel(1000);
  NormalizeResult r = normalize(mult, Theory{}, ReductionMode::Beta, fuel);
  ASSERT_FALSE(r.exhausted);
  // Both binders of the result come from the x : A binders of the numerals.
  EXPECT_EQ(print_term(r.term), "\\x : A. \\x' : A. x (x (x (x x')))");
}

TEST(Reduction, OmegaExhaustsFuel) {
  Term omega = parse("(\\x : A. x x) (\\x : A. x x)");
  Fuel fuel(500);
  NormalizeResult r = normalize(omega, Theory{}, ReductionMode::Beta, fuel);
  EXPECT_TRUE(r.exhausted);
  EXPECT_EQ(r.steps, 500U);
  Fuel f2(100);
  EXPECT_EQ(convertible(omega, parse("a"), Theory{}, f2, ReductionMode::Beta),
            Convertibility::FuelExhausted);
}

TEST(Reduction, SttRules) {
  Term t = parse_term("eps (imp a b)", stt());
  Fuel fuel;
  EXPECT_EQ(normalize(t, stt(), ReductionMode::BetaR, fuel).term,
            parse_term("eps a -> eps b", stt()));
  // Beta mode leaves rule redexes alone.
  Fuel f2;
  EXPECT_EQ(normalize(t, stt(), ReductionMode::Beta, f2).term, t);
  EXPECT_TRUE(is_normal(t, stt(), ReductionMode::Beta));
  EXPECT_FALSE(is_normal(t, stt(), ReductionMode::BetaR));

  Term q = parse_term("eps (forall{o} (\\x : o. imp x x))", stt());
  Fuel f3;
  EXPECT_EQ(print_term(normalize(q, stt(), ReductionMode::BetaR, f3).term),
            "Pi z : o. eps z -> eps z");
}

TEST(Reduction, RootRuleAndMatch) {
  Term lhs = stt().rules.front().lhs;
  auto m = match_pattern(lhs, parse_term("eps (imp a (imp b a))", stt()));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->at("X"), parse_term("a", stt()));
  EXPECT_EQ(m->at("Y"), parse_term("imp b a", stt()));
  EXPECT_FALSE(match_pattern(lhs, parse_term("eps a", stt())).has_value());
  auto app = r_root(parse_term("eps (imp a b)", stt()), stt());
  ASSERT_TRUE(app.has_value());
  EXPECT_EQ(app->rule_index, 0U);
}

TEST(Reduction, OneStepReductsCarryPositionsAndRules) {
  Term t = parse_term("(\\x : o. eps (imp x x)) a", stt());
  auto rs = one_step_reducts(t, stt(), ReductionMode::BetaR);
  ASSERT_EQ(rs.size(), 2U);
  EXPECT_EQ(rs[0].step, "beta");
  EXPECT_TRUE(rs[0].position.empty());
  EXPECT_EQ(rs[1].step, "eps_imp");
  EXPECT_EQ(rs[1].position, (Position{0, 1}));
  auto lo = leftmost_outermost_step(t, stt(), ReductionMode::BetaR);
  ASSERT_TRUE(lo.has_value());
  EXPECT_EQ(lo->step, "beta");
}

TEST(Reduction, TraceSeesEveryStep) {
  Term t = parse_term("(\\x : o. eps (imp x x)) a", stt());
  std::vector<std::string> steps;
  Fuel fuel;
  NormalizeResult r = normalize(t, stt(), ReductionMode::BetaR, fuel,
                                [&](const Reduct& s) { steps.push_back(s.step); });
  EXPECT_EQ(steps, (std::vector<std::string>{"beta", "eps_imp"}));
  EXPECT_EQ(r.steps, 2U);
}

TEST(Reduction, Convertibility) {
  Fuel fuel;
  EXPECT_EQ(convertible(parse_term("eps (imp a b)", stt()), parse_term("eps a -> eps b", stt()),
                        stt(), fuel),
            Convertibility::Convertible);
  EXPECT_EQ(convertible(parse_term("eps (imp a b)", stt()), parse_term("eps b -> eps a", stt()),
                        stt(), fuel),
            Convertibility::NotConvertible);
}

std::vector<Term> raw_terms() {
  oracle::RawTerms raw({Term::fvar("x"), Term::fvar("y"), Term::constant("c")});
  std::vector<Term> out;
  for (std::uint32_t s = 1; s <= 9; s += 2) {
    for (const Term& t : raw.of_size(s)) out.push_back(t);
  }
  return out;
}

TEST(ReductionProperty, BetaReductsMatchOracle) {
  std::size_t redexes = 0;
  for (const Term& t : raw_terms()) {
    std::vector<Term> expected = oracle::beta_reducts(t);
    std::vector<Term> got;
    for (const Reduct& r : one_step_reducts(t, Theory{}, ReductionMode::Beta)) {
      ASSERT_EQ(r.step, "beta");
      ASSERT_EQ(subterm_at(t, r.position).kind(), TermKind::App);
      got.push_back(r.term);
    }
    redexes += expected.size();
    // The library drops alpha-duplicates; compare as sets.
    for (const Term& e : expected) {
      ASSERT_NE(std::find(got.begin(), got.end(), e), got.end()) << print_term(t);
    }
    for (const Term& g : got) {
      ASSERT_NE(std::find(expected.begin(), expected.end(), g), expected.end()) << print_term(t);
    }
    ASSERT_EQ(is_normal(t, Theory{}, ReductionMode::Beta), expected.empty());
  }
  EXPECT_GT(redexes, 1000U);
}

TEST(ReductionProperty, NormalFormsAreNormalAndConvertible) {
  for (const Term& t : raw_terms()) {
    Fuel fuel(200);
    NormalizeResult r = normalize(t, Theory{}, ReductionMode::Beta, fuel);
    if (r.exhausted) continue;
    ASSERT_TRUE(is_normal(r.term, Theory{}, ReductionMode::Beta));
    Fuel f2(2000);
    ASSERT_EQ(convertible(t, r.term, Theory{}, f2, ReductionMode::Beta),
              Convertibility::Convertible);
  }
}

}  // namespace
}  // namespace pimodulo
