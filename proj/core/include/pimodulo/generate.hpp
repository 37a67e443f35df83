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

#ifndef PIMODULO_GENERATE_HPP
#define PIMODULO_GENERATE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pimodulo/reduction.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"

namespace pimodulo {

/// A term together with its type in normal form.
struct TypedTerm {
  Term term;
  Term type;
};

struct GeneratorOptions {
  /// Deepest binder nesting explored.
  std::uint32_t max_binder_depth = 3;
  /// Each (scope, size) bucket keeps at most this many terms, in generation
  /// order. Zero means unbounded.
  std::size_t max_terms_per_bucket = 200'000;
  /// Fuel for normalizing one type.
  std::uint64_t type_fuel = 10'000;
  /// Offer the sort Type as an atom.
  bool include_type_sort = true;
};

/// Bottom-up enumeration of the well-typed terms of a theory in a context,
/// by exact size (number of nodes). Subterms are built in scopes extended
/// with one fresh variable per enclosing binder, named `_v<k>`. Results are
/// memoized per scope and size and come out in a fixed order.
class TermEnumerator {
 public:
  TermEnumerator(Theory theory, Context ctx, GeneratorOptions options = {});
  ~TermEnumerator();
  TermEnumerator(const TermEnumerator&) = delete;
  TermEnumerator& operator=(const TermEnumerator&) = delete;

  const Theory& theory() const { return theory_; }
  const Context& context() const { return ctx_; }
  ReductionMode mode() const { return mode_; }

  /// Well-typed terms of exactly `size` nodes in the base context.
  const std::vector<TypedTerm>& of_size(std::uint32_t size);
  /// Sizes 1 through `max_size`, smallest first.
  std::vector<TypedTerm> up_to(std::uint32_t max_size);
  /// Whether some bucket hit max_terms_per_bucket.
  bool truncated() const { return truncated_; }

  /// Normal form of a type, or a null term when fuel runs out.
  Term normal_type(const Term& t) const;

 private:
  struct Bucket;
  struct Scope;
  Scope& root();
  Scope& child(Scope& parent, const Term& domain);
  const Bucket& bucket(Scope& scope, std::uint32_t size);
  void fill(Scope& scope, std::uint32_t size, Bucket& out);

  Theory theory_;
  Context ctx_;
  GeneratorOptions options_;
  ReductionMode mode_;
  std::unique_ptr<Scope> root_;
  bool truncated_ = false;
};

/// `count` distinct picks from `pool` drawn with a seeded generator (all of
/// them, shuffled, when the pool is smaller).
std::vector<TypedTerm> sample(const std::vector<TypedTerm>& pool, std::size_t count,
                              std::uint64_t seed);

struct ConvertiblePair {
  Term lhs;
  Term rhs;
  /// "reduct", "normal-form" or the rule id for rule instances.
  std::string origin;
};

/// Pairs (t, u) with t from `pool` and u reached from t by one to three
/// random reduction steps or by normalization. Terms in normal form are
/// skipped.
std::vector<ConvertiblePair> reduction_pairs(const Theory& theory, ReductionMode mode,
                                             const std::vector<TypedTerm>& pool,
                                             std::size_t count, std::uint64_t seed);

/// Instances lhs/rhs of every rule, with each pattern variable replaced by
/// a term of `pool` of the matching type. Up to `per_rule` per rule.
std::vector<ConvertiblePair> rule_instances(const Theory& theory, const TermEnumerator& types,
                                            const std::vector<TypedTerm>& pool,
                                            std::size_t per_rule, std::uint64_t seed);

struct SubstitutionInstance {
  Term t;
  std::string x;
  Term u;
};

/// Triples where x is a variable of `ctx` free in t, no other declaration
/// depends on x, and u from `pool` has the type of x and does not mention x.
std::vector<SubstitutionInstance> substitution_instances(const Context& ctx,
                                                         const TermEnumerator& types,
                                                         const std::vector<TypedTerm>& pool,
                                                         std::size_t count, std::uint64_t seed);

}  // namespace pimodulo

#endif  // PIMODULO_GENERATE_HPP
