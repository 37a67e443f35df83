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

#ifndef PIMODULO_TYPING_HPP
#define PIMODULO_TYPING_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pimodulo/reduction.hpp"
#include "pimodulo/source.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"

namespace pimodulo {

enum class TypeErrorCode {
  UnboundVariable,
  NotAFunction,
  DomainMismatch,
  IllegalSort,
  TypeMismatch,
  FuelExhausted,
  DuplicateName,
  NotBetaNormal,
  NonAlgebraicLhs,
  UnboundRuleVariable,
  LooseBoundVariable,
};

std::string_view to_string(TypeErrorCode code);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorCode code, const std::string& message, Term offending = {},
            Term expected = {}, Term actual = {});

  TypeErrorCode code() const { return code_; }
  /// Offending subterm, and for mismatches the normal forms involved.
  const Term& offending() const { return offending_; }
  const Term& expected() const { return expected_; }
  const Term& actual() const { return actual_; }

  const std::optional<SourceSpan>& span() const { return span_; }
  void set_span(SourceSpan span) { span_ = std::move(span); }

 private:
  TypeErrorCode code_;
  Term offending_;
  Term expected_;
  Term actual_;
  std::optional<SourceSpan> span_;
};

/// Type of `t` in `ctx` under `theory`, in normal form where it was computed
/// by substitution. Throws TypeError.
Term infer(const Theory& theory, const Context& ctx, const Term& t, Fuel& fuel);

/// Succeeds iff t has a type convertible to `expected`. Throws TypeError.
void check(const Theory& theory, const Context& ctx, const Term& t, const Term& expected,
           Fuel& fuel);

/// Declaration and Empty rules: fresh names, every type sorted by Type or
/// Kind in its prefix.
void check_context(const Theory& theory, const Context& ctx, Fuel& fuel);

/// Rule well-typedness in the plain lambda-Pi calculus over `signature`
/// (rules of `signature` are ignored), beta-normality and the algebraic
/// left-hand side restriction.
void check_rule(const Theory& signature, const RewriteRule& rule, Fuel& fuel);

/// Whether `lhs` is a constant-headed linear first-order pattern.
bool is_algebraic_pattern(const Term& lhs);

bool is_object(const Theory& theory, const Context& ctx, const Term& t, Fuel& fuel);

struct ReportItem {
  std::string subject;  // constant name or rule id
  std::string category;  // "constant" or "rule"
  bool ok = true;
  std::string code;
  std::string message;
};

struct TheoryReport {
  std::vector<ReportItem> items;
  std::vector<std::string> warnings;

  bool ok() const;
  std::size_t error_count() const;
  const ReportItem* find(const std::string& subject) const;
};

/// Checks the signature (plain lambda-Pi) and every rule; never throws for
/// per-item failures. Overlapping rule left-hand sides produce warnings.
TheoryReport check_theory(const Theory& theory, Fuel& fuel);

}  // namespace pimodulo

#endif  // PIMODULO_TYPING_HPP
