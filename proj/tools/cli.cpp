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

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace entwit::cli {

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Entanglement detection via the relative-entropy witness and work statistics", "entwit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string config, route;
  std::uint64_t seed = 0;
  int workers = 0;
  app.add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  auto *seed_opt = app.add_option("--seed", seed, "RNG seed (overrides the config)");
  auto *workers_opt = app.add_option("--workers", workers, "worker threads (default: ENTWIT_WORKERS, then all cores)")
                          ->check(CLI::PositiveNumber);
  auto *route_opt = app.add_option("--route", route, "witness route")->check(CLI::IsMember({"direct", "via-work"}));

  using Command = int (*)(const GlobalOptions &, std::ostream &);
  Command selected = nullptr;
  auto verb = [&](const char *name, const char *help, Command cmd) {
    app.add_subcommand(name, help)->fallthrough()->callback([&selected, cmd] { selected = cmd; });
  };
  verb("witness", "evaluate the witness for one rho*", cmd_witness);
  verb("sweep", "map the detection region over a (B, Jz, T) grid", cmd_sweep);
  verb("verify", "check the work-statistics identities", cmd_verify);
  verb("sample", "sample two-point-measurement trajectories", cmd_sample);

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "entwit: " << e.what() << "\n";
    return kConfigError;
  }

  g.config = config;
  if (*seed_opt) g.seed = seed;
  if (*workers_opt) g.workers = workers;
  if (*route_opt) g.route = parse_route(route);

  try {
    return selected(g, out);
  } catch (const NumericalError &e) {
    err << "entwit: numerical check [" << e.check() << "] failed: " << e.what() << "\n";
    return kNumericalError;
  } catch (const ConfigError &e) {
    err << "entwit: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument &e) {
    err << "entwit: invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception &e) {
    err << "entwit: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace entwit::cli
