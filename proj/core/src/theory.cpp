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

#include "pimodulo/theory.hpp"

#include <stdexcept>

namespace pimodulo {

Context::Context(std::initializer_list<Declaration> decls) {
  for (const Declaration& d : decls) push(d.name, d.type);
}

void Context::push(std::string name, Term type) {
  // Later declarations shadow earlier ones in lookup; duplicate detection is
  // done by check_context.
  index_[name] = decls_.size();
  decls_.push_back({std::move(name), std::move(type)});
}

void Context::pop() {
  if (decls_.empty()) throw std::logic_error("pop on empty context");
  const std::string name = decls_.back().name;
  decls_.pop_back();
  index_.erase(name);
  for (std::size_t i = decls_.size(); i-- > 0;) {
    if (decls_[i].name == name) {
      index_[name] = i;
      break;
    }
  }
}

const Term* Context::lookup(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &decls_[it->second].type;
}

Context Context::prefix(std::size_t n) const {
  Context out;
  for (std::size_t i = 0; i < n && i < decls_.size(); ++i) out.push(decls_[i].name, decls_[i].type);
  return out;
}

std::vector<std::string> Context::names() const {
  std::vector<std::string> out;
  out.reserve(decls_.size());
  for (const Declaration& d : decls_) out.push_back(d.name);
  return out;
}

Theory Theory::signature_only() const {
  Theory t;
  t.name = name;
  t.signature = signature;
  return t;
}

const RewriteRule* Theory::find_rule(const std::string& id) const {
  for (const RewriteRule& r : rules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

}  // namespace pimodulo
