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

#include "pimodulo/generate.hpp"
#include "pimodulo/printer.hpp"
#include "pimodulo/syntax.hpp"
#include "pimodulo/typing.hpp"

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

Term infer_str(const Theory& th, const std::string& ctx, const std::string& t) {
  Context c = parse_context(ctx, th);
  Fuel fuel;
  return infer(th, c, parse_term(t, th, c), fuel);
}

TypeErrorCode error_of(const Theory& th, const std::string& ctx, const std::string& t) {
  try {
    infer_str(th, ctx, t);
  } catch (const TypeError& e) {
    return e.code();
  }
  ADD_FAILURE() << t << " was accepted";
  return TypeErrorCode::FuelExhausted;
}

TEST(Typing, InfersSimpleTerms) {
  EXPECT_EQ(print_term(infer_str(stt(), "", "imp")), "o -> o -> o");
  EXPECT_EQ(print_term(infer_str(stt(), "a : o", "\\h : eps a. h")), "eps a -> eps a");
  EXPECT_EQ(print_term(infer_str(stt(), "", "o -> Type")), "Kind");
  EXPECT_EQ(print_term(infer_str(cc(), "", "eps_Kind dType")), "Type");
}

TEST(Typing, ConversionModuloRules) {
  Context c = parse_context("a : o", stt());
  Fuel fuel;
  // \h : eps a. h has type eps a -> eps a, which is eps (imp a a) modulo R.
  EXPECT_NO_THROW(check(stt(), c, parse_term("\\h : eps a. h", stt(), c),
                        parse_term("eps (imp a a)", stt(), c), fuel));
  EXPECT_THROW(check(stt(), c, parse_term("\\h : eps a. h", stt(), c),
                     parse_term("eps a", stt(), c), fuel),
               TypeError);
}

TEST(Typing, ErrorCodes) {
  EXPECT_EQ(error_of(stt(), "", "iota iota"), TypeErrorCode::NotAFunction);
  EXPECT_EQ(error_of(stt(), "", "undeclared"), TypeErrorCode::UnboundVariable);
  EXPECT_EQ(error_of(stt(), "a : o", "imp (eps a)"), TypeErrorCode::DomainMismatch);
  EXPECT_EQ(error_of(stt(), "", "Kind"), TypeErrorCode::IllegalSort);
  EXPECT_EQ(error_of(stt(), "", "\\x : Type -> Type. x"), TypeErrorCode::IllegalSort);
}

TEST(Typing, FuelExhaustionIsAnError) {
  Theory loop = parse_theory("A : Type\nf : A -> A\nB : A -> Type\n[x : A] f x --> f (f x) : A\n");
  Context c = parse_context("a : A, b : B (f a)", loop);
  Fuel fuel(50);
  try {
    check(loop, c, parse_term("b", loop, c), parse_term("B a", loop, c), fuel);
    FAIL() << "expected a type error";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.code(), TypeErrorCode::FuelExhausted);
  }
}

TEST(Typing, ContextChecking) {
  Fuel fuel;
  EXPECT_NO_THROW(check_context(stt(), parse_context("a : o, h : eps a", stt()), fuel));
  EXPECT_THROW(check_context(stt(), parse_context("a : o, a : o", stt()), fuel), TypeError);
  EXPECT_THROW(check_context(stt(), parse_context("h : eps a", stt()), fuel), TypeError);
}

TEST(Typing, ShippedTheoriesAreWellTyped) {
  for (const Theory* th : {&stt(), &cc()}) {
    Fuel fuel;
    TheoryReport report = check_theory(*th, fuel);
    EXPECT_TRUE(report.ok()) << th->name;
    EXPECT_EQ(report.error_count(), 0U);
    EXPECT_EQ(report.items.size(), th->signature.size() + th->rules.size());
  }
}

TEST(Typing, RuleMutationsAreRejected) {
  for (const Theory* th : {&stt(), &cc()}) {
    const Term wrong = Term::constant(th == &stt() ? "imp" : "dType");
    for (std::size_t i = 0; i < th->rules.size(); ++i) {
      Theory rhs_mutant = *th;
      rhs_mutant.rules[i].rhs = wrong;
      Theory type_mutant = *th;
      type_mutant.rules[i].type = Term::sort_kind();
      Fuel f1;
      Fuel f2;
      EXPECT_FALSE(check_theory(rhs_mutant, f1).ok()) << th->rules[i].id;
      EXPECT_FALSE(check_theory(type_mutant, f2).ok()) << th->rules[i].id;
    }
  }
}

TEST(Typing, RuleShapeRestrictions) {
  auto code_of = [&](const std::string& rule) {
    Theory th = parse_theory("A : Type\nf : A -> A\ng : A -> A\n" + rule + "\n");
    Fuel fuel;
    TheoryReport r = check_theory(th, fuel);
    const ReportItem* item = r.find(th.rules.front().id);
    return item && !item->ok ? item->code : std::string("ok");
  };
  EXPECT_EQ(code_of("[x : A] f x --> g x : A"), "ok");
  EXPECT_EQ(code_of("[x : A] f x --> (\\y : A. y) x : A"), "NotBetaNormal");
  EXPECT_EQ(code_of("[x : A] x --> f x : A"), "NonAlgebraicLhs");
  EXPECT_EQ(code_of("[x : A, y : A] f x --> y : A"), "UnboundRuleVariable");
  EXPECT_EQ(code_of("[x : A] f x --> f : A"), "TypeMismatch");
}

TEST(Typing, OverlapWarning) {
  Theory th = parse_theory("A : Type\nf : A -> A\na : A\n@r1 [x : A] f x --> x : A\n@r2 [] f a --> a : A\n");
  Fuel fuel;
  TheoryReport r = check_theory(th, fuel);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.warnings.size(), 1U);
}

TEST(Typing, DuplicateDeclarationsReported) {
  Theory th;
  th.signature.push("A", Term::sort_type());
  th.signature.push("A", Term::sort_type());
  Fuel fuel;
  TheoryReport r = check_theory(th, fuel);
  EXPECT_EQ(r.error_count(), 1U);
  EXPECT_EQ(r.items[1].code, "DuplicateName");
}

// Subject reduction on every well-typed term up to size 7.
void subject_reduction(const Theory& th, const Context& ctx) {
  TermEnumerator gen(th, ctx);
  std::size_t reducts = 0;
  for (const TypedTerm& tt : gen.up_to(7)) {
    for (const Reduct& r : one_step_reducts(tt.term, th, ReductionMode::BetaR)) {
      Fuel fuel;
      Term a;
      ASSERT_NO_THROW(a = infer(th, ctx, r.term, fuel)) << print_term(tt.term) << " ~> " << print_term(r.term);
      Fuel f2;
      ASSERT_EQ(convertible(a, tt.type, th, f2), Convertibility::Convertible)
          << print_term(tt.term) << " ~> " << print_term(r.term);
      ++reducts;
    }
  }
  EXPECT_GT(reducts, 100U);
}

TEST(TypingProperty, SubjectReductionStt) {
  subject_reduction(stt(), parse_context("a : o, b : o", stt()));
}

TEST(TypingProperty, SubjectReductionCc) {
  subject_reduction(cc(), parse_context("K : U_Kind, T : U_Type", cc()));
}

}  // namespace
}  // namespace pimodulo
