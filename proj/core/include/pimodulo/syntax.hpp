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

#ifndef PIMODULO_SYNTAX_HPP
#define PIMODULO_SYNTAX_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pimodulo/source.hpp"
#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"

namespace pimodulo {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::vector<std::string> expected, std::string found,
             const std::string& message = {});

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
  std::string found_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& path);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Surface syntax ------------------------------------------------------------

enum class SurfaceKind { Ident, Type, Kind, Pi, Lam, App };

struct SurfaceTerm;
using SurfacePtr = std::shared_ptr<const SurfaceTerm>;

/// Parsed term before name resolution. `A -> B` is a Pi with an empty binder
/// name. Identifiers keep their canonical `{...}` suffix as part of `name`.
struct SurfaceTerm {
  SurfaceKind kind;
  std::string name;  // identifier, or binder name
  SurfacePtr first;  // binder domain, or application function
  SurfacePtr second;  // binder body, or application argument
  SourceSpan span;
};

SurfacePtr make_ident(std::string name, SourceSpan span = {});
SurfacePtr make_sort(SurfaceKind kind, SourceSpan span = {});
SurfacePtr make_binder(SurfaceKind kind, std::string name, SurfacePtr domain, SurfacePtr body,
                       SourceSpan span = {});
SurfacePtr make_app(SurfacePtr fn, SurfacePtr arg, SourceSpan span = {});

/// Structural equality ignoring spans.
bool same_surface(const SurfacePtr& a, const SurfacePtr& b);
std::string print_surface(const SurfacePtr& t);

struct SurfaceBinding {
  std::string name;
  SurfacePtr type;
  SourceSpan span;
};

struct ConstDecl {
  std::string name;
  SurfacePtr type;
  SourceSpan span;
};

struct RuleDecl {
  std::string label;  // may be empty
  std::vector<SurfaceBinding> context;
  SurfacePtr lhs;
  SurfacePtr rhs;
  SurfacePtr type;
  SourceSpan span;
};

struct Directive {
  std::string name;  // without the leading '#'
  std::vector<SurfacePtr> args;
  SourceSpan span;
};

using TheoryItem = std::variant<ConstDecl, RuleDecl, Directive>;

struct TheoryFile {
  std::string path;
  std::vector<TheoryItem> items;
};

/// Equality of declarations ignoring spans.
bool same_theory_file(const TheoryFile& a, const TheoryFile& b);

TheoryFile parse_theory_file(std::string_view text, const std::string& path = {});
std::string print_theory_file(const TheoryFile& file);

// Elaboration ---------------------------------------------------------------

struct ElaborateOptions {
  /// Extra simple types (printed form) for which schema families are
  /// instantiated, on top of the directive or the closure of the file.
  std::vector<std::string> extra_simple_types;
};

/// Expands schema families, resolves names and produces the kernel theory.
/// Declarations are not type-checked here, and duplicate names are left for
/// check_theory to report. Throws ParseError for malformed directives.
Theory elaborate(const TheoryFile& file, const ElaborateOptions& options = {});

/// Parses and elaborates in one go.
Theory parse_theory(std::string_view text, const std::string& path = {},
                    const ElaborateOptions& options = {});

/// Prints an elaborated theory back as a `.th` file without schemas.
std::string print_theory(const Theory& theory);

/// Text of a shipped theory ("stt" or "cc"), or nullopt.
std::optional<std::string_view> builtin_theory_text(std::string_view name);

/// `ref` is a builtin name or a path. Throws IoError or ParseError.
Theory load_theory(const std::string& ref, const ElaborateOptions& options = {});

std::string read_file(const std::string& path);

// Terms and judgements -------------------------------------------------------

SurfacePtr parse_surface_term(std::string_view text, const std::string& path = {});

/// Binders become bound variables, context names free variables, signature
/// names constants; any other identifier is a free variable.
Term resolve(const SurfacePtr& t, const Theory& theory, const Context& ctx = {});

Term parse_term(std::string_view text, const Theory& theory, const Context& ctx = {});
/// Without a theory every identifier is a free variable.
Term parse_term(std::string_view text);

/// `x : A, y : B` resolved left to right.
Context parse_context(std::string_view text, const Theory& theory);

struct Judgement {
  unsigned line = 0;
  std::vector<SurfaceBinding> context;
  SurfacePtr subject;
  SurfacePtr type;  // null when only inference is requested
  SourceSpan span;
};

struct JudgementFile {
  std::string path;
  std::vector<Judgement> items;
};

/// One `ctx |- term [: type]` per non-blank, non-comment line.
JudgementFile parse_judgement_file(std::string_view text, const std::string& path = {});

struct ResolvedJudgement {
  Context context;
  Term subject;
  std::optional<Term> type;
};

ResolvedJudgement resolve(const Judgement& j, const Theory& theory);

/// `{...}` suffixes of identifiers used in the file, for requesting schema
/// instances during elaboration.
std::vector<std::string> suffix_instances(const JudgementFile& file);
std::vector<std::string> suffix_instances(const SurfacePtr& t);

}  // namespace pimodulo

#endif  // PIMODULO_SYNTAX_HPP
