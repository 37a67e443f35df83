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

#ifndef PIMODULO_VERDICT_HPP
#define PIMODULO_VERDICT_HPP

#include <string_view>

namespace pimodulo {

/// Outcome of an executable lemma check on one instance.
enum class LemmaVerdict { Holds, Fails, Unknown, PreconditionUnmet };

constexpr std::string_view to_string(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::Holds:
      return "holds";
    case LemmaVerdict::Fails:
      return "fails";
    case LemmaVerdict::Unknown:
      return "unknown";
    case LemmaVerdict::PreconditionUnmet:
      return "precondition-unmet";
  }
  return "?";
}

constexpr LemmaVerdict verdict(bool holds) {
  return holds ? LemmaVerdict::Holds : LemmaVerdict::Fails;
}

}  // namespace pimodulo

#endif  // PIMODULO_VERDICT_HPP
