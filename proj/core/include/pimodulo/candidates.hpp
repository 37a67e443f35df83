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

#ifndef PIMODULO_CANDIDATES_HPP
#define PIMODULO_CANDIDATES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pimodulo/reduction.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"
#include "pimodulo/verdict.hpp"

namespace pimodulo {

struct SnVerdict {
  enum class Kind { StronglyNormalizing, FuelExhausted };
  Kind kind = Kind::StronglyNormalizing;
  /// Length of the longest reduction sequence (StronglyNormalizing only).
  std::uint32_t max_depth = 0;
  /// Distinct terms met, up to alpha-equivalence.
  std::size_t visited = 0;

  bool normalizing() const { return kind == Kind::StronglyNormalizing; }
};

/// Explores the whole reduction tree of t, sharing alpha-equivalent nodes.
/// One unit of fuel per node expanded. A cycle counts as exhaustion.
SnVerdict sn_check(const Term& t, Fuel& fuel, const Theory& theory = {},
                   ReductionMode mode = ReductionMode::Beta);

/// Every term reachable from t, t included, or nullopt when fuel runs out
/// or the tree is infinite.
std::optional<std::vector<Term>> reachable_terms(const Term& t, Fuel& fuel,
                                                 const Theory& theory = {},
                                                 ReductionMode mode = ReductionMode::Beta);

/// Reducibility candidate expressions: the top candidate, Pi(C, S) and
/// finite non-empty intersections.
class CandidateExpr {
 public:
  enum class Kind { Top, Pi, Intersect };

  static CandidateExpr top();
  static CandidateExpr pi(CandidateExpr dom, std::vector<CandidateExpr> cods);
  static CandidateExpr intersect(std::vector<CandidateExpr> members);

  Kind kind() const { return node_->kind; }
  /// Pi domain.
  const CandidateExpr& domain() const { return node_->children.front(); }
  /// Pi codomains (after the domain) or intersection members.
  std::vector<CandidateExpr> parts() const;
  std::uint32_t depth() const;

  std::string to_string() const;
  friend bool operator==(const CandidateExpr& a, const CandidateExpr& b);

 private:
  struct Node {
    Kind kind = Kind::Top;
    std::vector<CandidateExpr> children;
  };
  explicit CandidateExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Candidates of depth at most `max_depth`: Top, Pi(C, {D}) and Pi(C, L)
/// with L the whole previous level, and pairwise intersections.
std::vector<CandidateExpr> enumerate_candidates(std::uint32_t max_depth);

enum class Membership { Yes, No, Unknown };
std::string_view to_string(Membership m);

/// Whether t belongs to the candidate. The quantifier over all members of
/// a Pi domain is approximated by the members of `probes` that are
/// themselves found in the domain. Beta only.
Membership in_candidate(const Term& t, const CandidateExpr& c, Fuel& fuel,
                        const std::vector<Term>& probes);

/// A variable (fresh for the probes) belongs to c.
LemmaVerdict check_variables_lemma(const CandidateExpr& c, Fuel& fuel,
                                   const std::vector<Term>& probes);
/// If t belongs to c, so does each of its one-step beta reducts.
LemmaVerdict check_closure_lemma(const Term& t, const CandidateExpr& c, Fuel& fuel,
                                 const std::vector<Term>& probes);
/// If t1 belongs to Pi(c, s) and t2 to c then (t1 t2) belongs to every
/// member of s.
LemmaVerdict check_application_lemma(const Term& t1, const Term& t2, const CandidateExpr& c,
                                     const std::vector<CandidateExpr>& s, Fuel& fuel,
                                     const std::vector<Term>& probes);

/// Occurrences of imp and of the forall{C} family.
std::uint32_t stt_measure(const Term& t);

/// Every beta-redex present after a rewrite step of t but not before has a
/// variable argument. Checks every rewrite (non-beta) step of t.
bool created_beta_redices_are_trivial(const Term& t, const Theory& theory);

}  // namespace pimodulo

#endif  // PIMODULO_CANDIDATES_HPP
