// Copyright 2026 The qconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef QCONC_TOOLS_CLI_HPP
#define QCONC_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qconc/copy_observables.hpp"

namespace qconc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitGateFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { json, csv, text };
std::string_view to_string(Format f);

struct RunConfig {
  std::string command;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  int trials = 200;
  std::uint64_t shots = 100000;
  Scheme scheme = Scheme::local6;
  std::string state = "bell_psiminus";
  std::string method;
  std::string out;  // empty: stdout
  Format format = Format::json;
  std::string records;  // optional shot-record CSV path
  bool strict = false;
};

nlohmann::json to_json(const RunConfig& cfg);

/// Parses argv, runs one subcommand and writes its report. Returns the
/// process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qconc::cli

#endif  // QCONC_TOOLS_CLI_HPP
