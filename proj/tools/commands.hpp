// Copyright 2026 The entwit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTWIT_TOOLS_COMMANDS_HPP
#define ENTWIT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "entwit/witness.hpp"

namespace entwit::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNumericalError = 2,
  kNotDetected = 3,
};

/// Flags shared by every verb; unset values fall back to the config file.
struct GlobalOptions {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;  // else ENTWIT_WORKERS, else hardware threads
  std::optional<Route> route;
};

int cmd_witness(const GlobalOptions &g, std::ostream &log);
int cmd_sweep(const GlobalOptions &g, std::ostream &log);
int cmd_verify(const GlobalOptions &g, std::ostream &log);
int cmd_sample(const GlobalOptions &g, std::ostream &log);

/// Full command line (argv[0] included). Never throws; maps errors to exit codes.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace entwit::cli

#endif  // ENTWIT_TOOLS_COMMANDS_HPP
