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
#include <unordered_map>

#include "oracle.hpp"
#include "pimodulo/candidates.hpp"
#include "pimodulo/printer.hpp"
#include "pimodulo/syntax.hpp"

namespace pimodulo {
namespace {

Term parse(const std::string& s) { return parse_term(s); }

// Longest beta reduction from t by exhaustive search over the oracle's
// reducts; -1 when more than `budget` distinct terms are met.
int longest(const Term& t, std::unordered_map<Term, int>& memo, std::size_t budget) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  if (memo.size() > budget) return -1;
  memo[t] = -1;  // on the stack; a revisit means a cycle
  int best = 0;
  for (const Term& r : oracle::beta_reducts(t)) {
    int d = longest(r, memo, budget);
    if (d < 0) return -1;
    best = std::max(best, d + 1);
  }
  return memo[t] = best;
}

TEST(SnCheck, OmegaIsNotCertified) {
  Fuel fuel(10'000);
  SnVerdict v = sn_check(parse("(\\x : A. x x) (\\x : A. x x)"), fuel);
  EXPECT_FALSE(v.normalizing());
  Fuel f2(10'000);
  EXPECT_FALSE(reachable_terms(parse("(\\x : A. x x) (\\x : A. x x)"), f2).has_value());
}

TEST(SnCheck, Church) {
  Fuel fuel;
  SnVerdict v = sn_check(parse("(\\f : A. \\x : A. f (f x)) (\\f : A. \\x : A. f (f x))"), fuel);
  EXPECT_TRUE(v.normalizing());
  EXPECT_GT(v.max_depth, 2U);
}

TEST(SnCheck, RuleLoopsAreCaught) {
  Theory th = parse_theory("A : Type\nf : A -> A\n[x : A] f x --> f (f x) : A\n");
  Fuel fuel(200);
  EXPECT_FALSE(sn_check(parse_term("f a", th), fuel, th, ReductionMode::BetaR).normalizing());
  Fuel f2(200);
  EXPECT_TRUE(sn_check(parse_term("f a", th), f2, th, ReductionMode::Beta).normalizing());
}

TEST(SnCheckProperty, DepthMatchesOracle) {
  oracle::RawTerms raw({Term::fvar("x"), Term::fvar("y")});
  std::size_t compared = 0;
  for (std::uint32_t size = 1; size <= 9; size += 2) {
    for (const Term& t : raw.of_size(size)) {
      if (oracle::beta_reducts(t).empty()) continue;
      std::unordered_map<Term, int> memo;
      const int expected = longest(t, memo, 2000);
      Fuel fuel(100'000);
      SnVerdict v = sn_check(t, fuel);
      if (expected < 0) {
        EXPECT_FALSE(v.normalizing() && v.visited < 2000) << print_term(t);
        continue;
      }
      ASSERT_TRUE(v.normalizing()) << print_term(t);
      ASSERT_EQ(v.max_depth, static_cast<std::uint32_t>(expected)) << print_term(t);
      ASSERT_EQ(v.visited, memo.size()) << print_term(t);
      ++compared;
    }
  }
  EXPECT_GT(compared, 10'000U);
}

TEST(Candidates, Enumeration) {
  auto cs = enumerate_candidates(3);
  EXPECT_EQ(cs.size(), 8U);
  EXPECT_EQ(enumerate_candidates(1).size(), 1U);
  EXPECT_EQ(cs.front(), CandidateExpr::top());
  for (const auto& c : cs) EXPECT_LE(c.depth(), 3U);
  CandidateExpr p = CandidateExpr::pi(CandidateExpr::top(), {CandidateExpr::top()});
  EXPECT_EQ(p.to_string(), "Pi(T, {T})");
  EXPECT_EQ(p.depth(), 2U);
  EXPECT_THROW(CandidateExpr::intersect({}), std::invalid_argument);
}

TEST(Candidates, Membership) {
  const CandidateExpr top = CandidateExpr::top();
  const CandidateExpr arrow = CandidateExpr::pi(top, {top});
  const std::vector<Term> tame = {parse("\\y : A. y"), parse("z")};
  Fuel fuel(100'000);
  EXPECT_EQ(in_candidate(parse("x"), top, fuel, tame), Membership::Yes);
  EXPECT_EQ(in_candidate(parse("\\x : A. x x"), arrow, fuel, tame), Membership::Yes);
  // With the self-application among the probes the body becomes Omega.
  std::vector<Term> wild = tame;
  wild.push_back(parse("\\y : A. y y"));
  Fuel f2(10'000);
  EXPECT_EQ(in_candidate(parse("\\x : A. x x"), arrow, f2, wild), Membership::Unknown);
}

TEST(Candidates, Lemmas) {
  const std::vector<Term> probes = {parse("\\y : A. y"), parse("z"), parse("\\y : A. \\w : A. w")};
  for (const CandidateExpr& c : enumerate_candidates(3)) {
    Fuel fuel(100'000);
    EXPECT_EQ(check_variables_lemma(c, fuel, probes), LemmaVerdict::Holds) << c.to_string();
    Fuel f2(100'000);
    EXPECT_NE(check_closure_lemma(parse("(\\x : A. x) (\\y : A. y)"), c, f2, probes),
              LemmaVerdict::Fails);
  }
  const CandidateExpr top = CandidateExpr::top();
  Fuel fuel(100'000);
  EXPECT_EQ(check_application_lemma(parse("\\x : A. x"), parse("z"), top, {top}, fuel, probes),
            LemmaVerdict::Holds);
}

TEST(Measure, CountsConnectives) {
  Theory stt = load_theory("stt");
  EXPECT_EQ(stt_measure(parse_term("eps (imp a (imp b a))", stt)), 2U);
  EXPECT_EQ(stt_measure(parse_term("eps (forall{o} (\\x : o. imp x x))", stt)), 2U);
  EXPECT_EQ(stt_measure(parse_term("eps a -> eps b", stt)), 0U);
}

TEST(Measure, CreatedRedices) {
  Theory stt = load_theory("stt");
  // forall introduces (\x. imp x x) z with a variable argument.
  EXPECT_TRUE(created_beta_redices_are_trivial(
      parse_term("eps (forall{o} (\\x : o. imp x x))", stt), stt));
  Theory bad = parse_theory("A : Type\nf : (A -> A) -> A\na : A\n[g : A -> A] f g --> g a : A\n");
  EXPECT_FALSE(created_beta_redices_are_trivial(parse_term("f (\\x : A. x)", bad), bad));
  EXPECT_TRUE(created_beta_redices_are_trivial(parse_term("f g", bad), bad));
}

}  // namespace
}  // namespace pimodulo
