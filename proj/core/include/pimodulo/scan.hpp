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

#ifndef PIMODULO_SCAN_HPP
#define PIMODULO_SCAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pimodulo/candidates.hpp"
#include "pimodulo/generate.hpp"
#include "pimodulo/reduction.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"
#include "pimodulo/verdict.hpp"

// Batch sweeps shared by the command-line driver and the test suites.
namespace pimodulo {

enum class ModelKind { Stt, Cc };

/// Which built-in model interprets the theory, judged from its signature.
std::optional<ModelKind> model_kind(const Theory& theory);
std::string_view to_string(ModelKind kind);

/// `a : o, b : o` for STT, `K : U_Kind, T : U_Type` for CC.
Context default_context(ModelKind kind, const Theory& theory);

struct LemmaTally {
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t unknown = 0;
  std::size_t skipped = 0;

  void add(LemmaVerdict v);
  void merge(const LemmaTally& o);
  std::size_t total() const { return holds + fails + unknown + skipped; }
};

struct Counterexample {
  std::string lemma;
  std::string algebra;  // .alg text
  std::string valuation;
  std::string lhs;
  std::string rhs;
  std::string detail;
};

struct ModelCheckOptions {
  /// Sizes 1 and 2 are enumerated exhaustively, larger ones sampled.
  unsigned max_algebra_size = 2;
  std::size_t sampled_algebras = 16;
  std::uint64_t seed = 1;
  /// Largest generated term.
  std::uint32_t max_size = 8;
  std::size_t pairs = 200;
  std::size_t rule_instances_per_rule = 5;
  std::size_t substitutions = 1000;
  std::size_t discipline_terms = 200;
  /// phi valuations per algebra (per psi for CC).
  std::size_t valuation_limit = 1000;
  std::size_t psi_limit = 64;
  unsigned jobs = 1;
  std::optional<Context> context;
};

struct ModelCheckReport {
  ModelKind kind = ModelKind::Stt;
  Context context;
  std::size_t algebras = 0;
  /// lemma1, lemma2, conversion, substitution, typing.
  std::map<std::string, LemmaTally> lemmas;
  std::vector<ConvertiblePair> pairs;
  std::vector<SubstitutionInstance> substitutions;
  /// Generated items left out because evaluating them needs a union over
  /// the universe E.
  std::size_t excluded_pairs = 0;
  std::size_t excluded_substitutions = 0;
  std::optional<Counterexample> counterexample;

  bool ok() const { return !counterexample.has_value(); }
};

/// Conversion, substitution, typing-discipline and the structural lemmas
/// over every algebra of the grid. Throws std::invalid_argument when no
/// built-in model fits the theory.
ModelCheckReport model_check(const Theory& theory, const ModelCheckOptions& options);

struct ConsistencyOptions {
  std::uint32_t max_size = 8;
  std::uint64_t fuel = 100'000;
};

struct ConsistencyReport {
  std::size_t enumerated = 0;
  std::size_t normal = 0;
  std::vector<Term> inhabitants;
  bool truncated = false;
};

/// Every normal well-typed term up to max_size in `ctx` whose type is
/// convertible to `target`.
ConsistencyReport consistency_scan(const Theory& theory, const Context& ctx, const Term& target,
                                   const ConsistencyOptions& options);

struct SnScanOptions {
  std::uint32_t max_size = 9;
  std::size_t count = 5000;
  std::uint64_t fuel = 100'000;
  std::uint64_t seed = 1;
  ReductionMode mode = ReductionMode::Beta;
  unsigned jobs = 1;
  std::optional<Context> context;
};

struct SnScanResult {
  Term term;
  SnVerdict verdict;
};

struct SnScanReport {
  std::vector<SnScanResult> results;
  /// Enumerated terms, and those among them that are not normal.
  std::size_t pool = 0;
  std::size_t reducible_pool = 0;
  std::size_t normalizing = 0;
  /// Normalizing results that took at least one step.
  std::size_t reducible = 0;
  std::size_t exhausted = 0;
  std::uint32_t max_depth = 0;
};

/// sn_check on `count` well-typed terms sampled from the enumeration up to
/// max_size, half of them (when available) not in normal form.
SnScanReport sn_scan(const Theory& theory, const SnScanOptions& options);

struct MeasureReport {
  std::size_t terms = 0;
  std::size_t rewrite_steps = 0;
  std::size_t non_decreasing = 0;
  std::size_t nontrivial_created = 0;
  std::vector<Term> offenders;
};

/// For each rewrite step of each term: whether the imp/forall count drops
/// (STT only, when `measure` is set) and whether created beta-redices have
/// variable arguments.
MeasureReport measure_scan(const Theory& theory, const std::vector<Term>& terms, bool measure);

}  // namespace pimodulo

#endif  // PIMODULO_SCAN_HPP
