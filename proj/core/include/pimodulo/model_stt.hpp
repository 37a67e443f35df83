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

#ifndef PIMODULO_MODEL_STT_HPP
#define PIMODULO_MODEL_STT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pimodulo/algebra.hpp"
#include "pimodulo/semantic.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"
#include "pimodulo/verdict.hpp"

namespace pimodulo {

/// Model of simple type theory valued in a finite full Pi-algebra. Objects
/// live in {e}; propositions are interpreted in the carrier.
///
/// Recognised constants: iota, o, eps, imp and the family forall{C}, whose
/// C is read off the signature type `(C -> o) -> o`.
class SttModel {
 public:
  SttModel(const Theory& theory, FiniteAlgebra algebra,
           std::size_t cap = semantic::kDefaultCardinalityCap);

  const FiniteAlgebra& algebra() const { return algebra_; }
  const semantic::Set& carrier() const { return carrier_; }

  /// M_t. Variables and unknown constants get {e}.
  semantic::Set domain(const Term& t) const;

  /// Interpretation of a well-typed term. Throws semantic::SemanticError on
  /// ill-typed input or unknown constants.
  semantic::Value interp(const Term& t, const semantic::Valuation& phi) const;

  /// Valuations of `ctx`: the full product of the declared domains when it
  /// has at most `limit` members, else `limit` seeded samples.
  std::vector<semantic::Valuation> valuations(const Context& ctx, std::size_t limit,
                                              std::uint64_t seed) const;

 private:
  semantic::Value eval(const Term& t, const semantic::Valuation& phi,
                       std::vector<semantic::Value>& env) const;
  semantic::Value constant_value(const std::string& name) const;

  Theory theory_;
  FiniteAlgebra algebra_;
  semantic::Set carrier_;
  std::size_t cap_;
  semantic::Valuation constants_;
};

/// Whether t mentions Kind, Type or o.
bool mentions_stt_sorts(const Term& t);

LemmaVerdict check_lemma1_stt(const SttModel& model, const Term& t);
LemmaVerdict check_lemma2_stt(const SttModel& model, const Term& t, const std::string& x,
                              const Term& u);
LemmaVerdict check_substitution_stt(const SttModel& model, const Term& t, const std::string& x,
                                    const Term& u, const semantic::Valuation& phi);
/// Domain and interpretation agree. Expects `t` and `u` to be convertible.
LemmaVerdict check_conversion_stt(const SttModel& model, const Term& t, const Term& u,
                                  const semantic::Valuation& phi);
/// The interpretation of `t` lies in the domain of its type `type`.
LemmaVerdict check_typing_discipline_stt(const SttModel& model, const Term& t, const Term& type,
                                         const semantic::Valuation& phi);

}  // namespace pimodulo

#endif  // PIMODULO_MODEL_STT_HPP
