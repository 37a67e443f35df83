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

#ifndef PIMODULO_SOURCE_HPP
#define PIMODULO_SOURCE_HPP

#include <cstddef>
#include <string>

namespace pimodulo {

/// Byte range in a source file; line and column are 1-based and refer to
/// `start`.
struct SourceSpan {
  std::string file;
  std::size_t start = 0;
  std::size_t end = 0;
  unsigned line = 0;
  unsigned column = 0;

  std::string to_string() const {
    return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" +
           std::to_string(column);
  }
};

}  // namespace pimodulo

#endif  // PIMODULO_SOURCE_HPP
