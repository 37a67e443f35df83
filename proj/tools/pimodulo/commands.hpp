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

#ifndef PIMODULO_TOOLS_COMMANDS_HPP
#define PIMODULO_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace pimodulo::cli {

enum ExitCode : int {
  kOk = 0,
  kTypeError = 1,
  kParseError = 2,
  kFuelExhausted = 3,
  kIoError = 4,
  kCounterexample = 5,
};

enum class Format { Text, Json };

struct RunConfig {
  std::string theory = "stt";
  std::uint64_t fuel = 1'000'000;
  std::optional<std::uint32_t> max_size;
  unsigned algebra_size = 2;
  std::uint64_t seed = 1;
  Format format = Format::Text;
  unsigned jobs = 1;
  bool trace = false;
  /// "beta", "betar", or empty for the theory default.
  std::string mode;
  /// Overrides the default context of the scans, `x : A, ...`.
  std::string context;

  // check
  std::string term_file;
  // normalize
  std::string term;
  // model-check
  std::size_t pairs = 200;
  std::size_t substitutions = 1000;
  std::size_t sampled_algebras = 16;
  // consistency-scan
  std::string target;
  bool control = true;
  // sn-scan
  std::size_t count = 5000;
  double unknown_threshold = 0.0;
};

/// PIMODULO_FUEL when set to a positive integer, else 10^6.
std::uint64_t default_fuel();

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_normalize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_model_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_consistency_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sn_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches. Usage errors exit with 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pimodulo::cli

#endif  // PIMODULO_TOOLS_COMMANDS_HPP
