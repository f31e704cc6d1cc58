// Copyright 2026 The channelscope Authors
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

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "common.hpp"

namespace channelscope::cli {

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const NotCompletelyPositiveError& e) {
    std::cerr << "error: " << e.what() << "\n  cp report: min Choi eigenvalue "
              << fixed4(e.report().min_eigenvalue) << '\n';
    return kExitNotCp;
  } catch (const InfeasibleDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const IncompleteDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& m : e.missing()) std::cerr << "  missing: " << m << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

namespace {

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"Single-qubit channel tomography: simulate, reconstruct, compare, sweep."};
  app.name("channelscope");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CHANNELSCOPE_VERSION));

  std::vector<Command> commands = {add_simulate(app), add_reconstruct(app), add_fidelity(app),
                                   add_fit_sweep(app), add_sweep(app)};
  for (auto& c : commands) {
    c.app->add_option("--config", "JSON file of option values; flags given here win")
        ->check(CLI::ExistingFile);
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (!args.empty()) {
      for (auto& c : commands) {
        if (c.app->get_name() != args[0]) continue;
        if (const auto path = find_config_path(args)) {
          const ConfigExpansion expansion =
              expand_config(io::read_json_file(*path), *c.app);
          args.insert(args.begin() + 1, expansion.args.begin(), expansion.args.end());
          if (expansion.inline_channel) c.set_inline_channel(*expansion.inline_channel);
        }
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (auto& c : commands)
    if (c.app->parsed()) return run_guarded(c.run);
  return kExitUsage;
}

}  // namespace channelscope::cli

int main(int argc, char** argv) { return channelscope::cli::run_main(argc, argv); }
