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

#ifndef PIMODULO_THEORY_HPP
#define PIMODULO_THEORY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pimodulo/term.hpp"

namespace pimodulo {

struct Declaration {
  std::string name;
  Term type;
};

/// Ordered list of typed names. Used both for typing contexts and for
/// signatures; well-formedness is the typing module's business.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<Declaration> decls);

  void push(std::string name, Term type);
  void pop();

  const Term* lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }

  std::size_t size() const { return decls_.size(); }
  bool empty() const { return decls_.empty(); }
  const Declaration& operator[](std::size_t i) const { return decls_[i]; }
  auto begin() const { return decls_.begin(); }
  auto end() const { return decls_.end(); }

  /// Prefix of the first `n` declarations.
  Context prefix(std::size_t n) const;
  std::vector<std::string> names() const;

 private:
  std::vector<Declaration> decls_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// `lhs --> rhs` with pattern context and rule type. Pattern variables are the
/// free variables (FVar) of `lhs`, all declared in `context`.
struct RewriteRule {
  std::string id;
  Context context;
  Term lhs;
  Term rhs;
  Term type;
};

/// Signature plus rewrite rules. Rules fire in declaration order.
struct Theory {
  std::string name;
  Context signature;
  std::vector<RewriteRule> rules;

  const Term* constant_type(const std::string& c) const { return signature.lookup(c); }

  /// Same signature, no rules: the plain lambda-Pi calculus over it.
  Theory signature_only() const;
  const RewriteRule* find_rule(const std::string& id) const;
};

}  // namespace pimodulo

#endif  // PIMODULO_THEORY_HPP
