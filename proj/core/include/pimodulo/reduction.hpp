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

#ifndef PIMODULO_REDUCTION_HPP
#define PIMODULO_REDUCTION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"

namespace pimodulo {

enum class ReductionMode { Beta, BetaR };

/// Budget of one-step reductions. Every successful step costs exactly one
/// unit; running out is reported to the caller, never papered over.
class Fuel {
 public:
  static constexpr std::uint64_t kDefault = 1'000'000;

  explicit Fuel(std::uint64_t steps = kDefault) : initial_(steps), remaining_(steps) {}

  /// Takes one unit. Returns false (and takes nothing) when empty.
  bool consume() {
    if (remaining_ == 0) return false;
    --remaining_;
    return true;
  }

  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t spent() const { return initial_ - remaining_; }
  bool exhausted() const { return remaining_ == 0; }

 private:
  std::uint64_t initial_;
  std::uint64_t remaining_;
};

/// Pattern variable name -> matched subterm.
using MatchSubstitution = std::map<std::string, Term>;

std::optional<Term> beta_root(const Term& t);

/// First-order matching of an algebraic left-hand side. The free variables of
/// `lhs` are its pattern variables.
std::optional<MatchSubstitution> match_pattern(const Term& lhs, const Term& t);

struct RuleApplication {
  Term result;
  std::size_t rule_index = 0;
  MatchSubstitution substitution;
};

/// Root R-step with the first rule (declaration order) that matches.
std::optional<RuleApplication> r_root(const Term& t, const Theory& theory);

struct Reduct {
  Position position;
  std::string step;  // "beta" or the rule id
  Term term;
};

/// All one-step reducts, at every position, deduplicated up to alpha.
std::vector<Reduct> one_step_reducts(const Term& t, const Theory& theory, ReductionMode mode);

bool is_normal(const Term& t, const Theory& theory, ReductionMode mode);

/// The leftmost-outermost redex contracted, if any.
std::optional<Reduct> leftmost_outermost_step(const Term& t, const Theory& theory,
                                              ReductionMode mode);

using TraceFn = std::function<void(const Reduct&)>;

struct NormalizeResult {
  /// Normal form, or the last intermediate term when fuel ran out.
  Term term;
  bool exhausted = false;
  std::uint64_t steps = 0;

  explicit operator bool() const { return !exhausted; }
};

NormalizeResult normalize(const Term& t, const Theory& theory, ReductionMode mode, Fuel& fuel,
                          const TraceFn& trace = {});

enum class Convertibility { Convertible, NotConvertible, FuelExhausted };

/// Decides t == u modulo beta(R) by comparing normal forms. Complete only for
/// confluent, terminating rule sets.
Convertibility convertible(const Term& t, const Term& u, const Theory& theory, Fuel& fuel,
                           ReductionMode mode = ReductionMode::BetaR);

}  // namespace pimodulo

#endif  // PIMODULO_REDUCTION_HPP
