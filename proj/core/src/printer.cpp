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

#include "pimodulo/printer.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace pimodulo {
namespace {

enum Prec { kBinder = 0, kApp = 1, kAtom = 2 };

class Printer {
 public:
  explicit Printer(const Term& root) {
    used_ = free_vars(root);
    for (const std::string& c : constants_of(root)) used_.insert(c);
    used_.insert({"Type", "Kind", "Pi"});
  }

  std::string print(const Term& t, Prec prec) {
    switch (t.kind()) {
      case TermKind::BVar:
        if (t.index() < stack_.size()) return stack_[stack_.size() - 1 - t.index()];
        return "#" + std::to_string(t.index());
      case TermKind::FVar:
      case TermKind::Const:
        return t.name();
      case TermKind::Type:
        return "Type";
      case TermKind::Kind:
        return "Kind";
      case TermKind::App: {
        std::string s = print(t.fn(), kApp) + " " + print(t.arg(), kAtom);
        return wrap(s, prec > kApp);
      }
      case TermKind::Pi:
        if (!has_loose_bvar(t.body(), 0)) {
          std::string dom = print(t.domain(), kApp);
          stack_.push_back("_");
          std::string cod = print(t.body(), kBinder);
          stack_.pop_back();
          return wrap(dom + " -> " + cod, prec > kBinder);
        }
        return wrap(binder("Pi ", t), prec > kBinder);
      case TermKind::Lam:
        return wrap(binder("\\", t), prec > kBinder);
    }
    return "?";
  }

 private:
  static std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

  std::string binder(const char* keyword, const Term& t) {
    std::string ann = print(t.domain(), kBinder);
    std::string name = t.name().empty() ? "x" : t.name();
    while (used_.count(name) ||
           std::find(stack_.begin(), stack_.end(), name) != stack_.end()) {
      name += "'";
    }
    stack_.push_back(name);
    std::string body = print(t.body(), kBinder);
    stack_.pop_back();
    return std::string(keyword) + name + " : " + ann + ". " + body;
  }

  std::set<std::string> used_;
  std::vector<std::string> stack_;
};

}  // namespace

std::string print_term(const Term& t) {
  if (t.is_null()) return "<null>";
  Printer p(t);
  return p.print(t, kBinder);
}

std::string print_context(const Context& ctx) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].name + " : " + print_term(ctx[i].type);
  }
  return s;
}

std::string print_rule(const RewriteRule& rule) {
  return "[" + print_context(rule.context) + "] " + print_term(rule.lhs) + " --> " +
         print_term(rule.rhs) + " : " + print_term(rule.type);
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << print_term(t); }

}  // namespace pimodulo
