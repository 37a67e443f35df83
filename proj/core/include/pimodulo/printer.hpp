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

#ifndef PIMODULO_PRINTER_HPP
#define PIMODULO_PRINTER_HPP

#include <ostream>
#include <string>

#include "pimodulo/term.hpp"
#include "pimodulo/theory.hpp"

namespace pimodulo {

/// Re-parseable ASCII rendering with minimal parentheses. Non-dependent
/// products print as `A -> B`; binder names are taken from the hints and
/// primed until they neither capture nor shadow anything.
std::string print_term(const Term& t);

std::string print_context(const Context& ctx);

std::string print_rule(const RewriteRule& rule);

std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace pimodulo

#endif  // PIMODULO_PRINTER_HPP
