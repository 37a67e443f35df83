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

#ifndef PIMODULO_MODEL_CC_HPP
#define PIMODULO_MODEL_CC_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pimodulo/algebra.hpp"
#include "pimodulo/semantic.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"
#include "pimodulo/verdict.hpp"

namespace pimodulo {

/// Model of the calculus of constructions valued in a finite full
/// Pi-algebra. Three layers: the outer domains N_t, the psi-indexed domains
/// M_{t,psi} (sets are values inside the symbolic universe E), and the
/// interpretation valued in M.
///
/// Recognised constants: U_Type, U_Kind, dType, eps_Type, eps_Kind and
/// dPi{s1,s2,s3} for the four sort triples of the theory.
class CcModel {
 public:
  explicit CcModel(FiniteAlgebra algebra, std::size_t cap = semantic::kDefaultCardinalityCap);

  const FiniteAlgebra& algebra() const { return algebra_; }

  /// N_t.
  semantic::Set domain_n(const Term& t) const;

  /// M_{t,psi}. The union in the product clause is only formed when N of
  /// the domain enumerates; otherwise semantic::UnenumerableUnion.
  semantic::Value domain_m(const Term& t, const semantic::Valuation& psi) const;
  /// domain_m of a type, unwrapped to the set it denotes.
  semantic::Set domain_m_set(const Term& t, const semantic::Valuation& psi) const;

  /// Interpretation at the fixed psi. A variable bound inside `t` with
  /// domain C is given the psi value default_element(N_C) while M-sets
  /// are computed below its binder.
  semantic::Value interp(const Term& t, const semantic::Valuation& phi,
                         const semantic::Valuation& psi) const;

  /// psi valuations: each variable ranges over the probe elements of N_A.
  std::vector<semantic::Valuation> psi_valuations(const Context& ctx, std::size_t limit,
                                                  std::uint64_t seed) const;
  /// phi valuations at `psi`: each variable ranges over M_{A,psi}.
  std::vector<semantic::Valuation> valuations(const Context& ctx, const semantic::Valuation& psi,
                                              std::size_t limit, std::uint64_t seed) const;
  /// e on {e}, the carrier on E, constant functions on function spaces.
  semantic::Valuation default_psi(const Context& ctx) const;

 private:
  struct Bound {
    semantic::Value value;
    semantic::Value psi;
  };
  semantic::Value eval(const Term& t, const semantic::Valuation& phi,
                       const semantic::Valuation& psi, std::vector<Bound>& env) const;
  std::vector<semantic::Value> psi_env(const std::vector<Bound>& env) const;

  FiniteAlgebra algebra_;
  semantic::Set carrier_;
  std::size_t cap_;
  std::shared_ptr<const semantic::Valuation> m_constants_;
  semantic::Valuation interp_constants_;
};

/// Whether t mentions Kind, Type or U_Kind.
bool mentions_cc_sorts(const Term& t);

LemmaVerdict check_lemma1_cc(const CcModel& model, const Term& t);
LemmaVerdict check_lemma2_cc(const CcModel& model, const Term& t, const std::string& x,
                             const Term& u);
/// Both the M-level and the interpretation-level equalities.
LemmaVerdict check_substitution_cc(const CcModel& model, const Term& t, const std::string& x,
                                   const Term& u, const semantic::Valuation& phi,
                                   const semantic::Valuation& psi);
/// N, M and interpretation agree. Expects convertible terms.
LemmaVerdict check_conversion_cc(const CcModel& model, const Term& t, const Term& u,
                                 const semantic::Valuation& phi, const semantic::Valuation& psi);
/// M_{t,psi} lies in N of its type `type`.
LemmaVerdict check_typing_discipline_cc(const CcModel& model, const Term& t, const Term& type,
                                        const semantic::Valuation& psi);

}  // namespace pimodulo

#endif  // PIMODULO_MODEL_CC_HPP
