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

#ifndef CHANNELSCOPE_TOOLS_COMMON_HPP_
#define CHANNELSCOPE_TOOLS_COMMON_HPP_

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "channelscope/channelscope.hpp"

namespace channelscope::cli {

using io::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNotCp = 2,
  kExitStrictCp = 3,
  kExitInfeasible = 4,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ground-truth channel: a family with parameters, or an explicit channel file
// or inline {"M", "v"} from a config file.
struct ChannelSpec {
  std::string family;
  double lambda = 1.0;
  double theta_deg = 0.0;
  double alpha_deg = 0.0;
  std::string channel_file;
  std::optional<json> inline_channel;

  void add_options(CLI::App& app);
  AffineChannel build() const;
  json to_json() const;
};

// Test states: ideal, or a state-tomography data-matrix file.
struct EnsembleSpec {
  std::string file;
  bool ideal = false;
  bool default_ideal = true;

  // Without a file or --ideal-states: ideal when `default_ideal`, else a
  // usage error.
  void add_options(CLI::App& app);
  TestStateEnsemble build(const MeasurementModel& model) const;
  json to_json() const;
};

// eta, or eta0/eta1 for a biased detector.
struct ModelSpec {
  std::optional<double> eta;
  std::optional<double> eta0;
  std::optional<double> eta1;

  void add_options(CLI::App& app);
  std::optional<MeasurementModel> build() const;
  json to_json() const;
};

std::string fixed4(double value);
std::string fixed4(const AffineChannel& channel);

// Reads --config <file>: each key names an option of the subcommand
// (underscores or dashes); values become arguments placed before the
// command-line ones, so explicit flags win. "channel" may hold a family spec
// or an inline {"M", "v"}.
struct ConfigExpansion {
  std::vector<std::string> args;
  std::optional<json> inline_channel;
};
ConfigExpansion expand_config(const json& config, const CLI::App& command);

json cp_report_json(const CpReport& report);

void write_output(const std::string& path, const std::string& text);

// Maps library exceptions to exit codes after printing them to stderr.
int run_guarded(const std::function<int()>& body);

// Thread cap from CHANNEL_SCOPE_THREADS (default: hardware concurrency).
unsigned worker_count(std::size_t jobs);

// A subcommand: its parser, the action run after parsing, and where an inline
// channel from a config file goes (null when the command takes none).
struct Command {
  CLI::App* app = nullptr;
  std::function<int()> run;
  std::function<void(const json&)> set_inline_channel;
};

Command add_simulate(CLI::App& root);
Command add_reconstruct(CLI::App& root);
Command add_fidelity(CLI::App& root);
Command add_fit_sweep(CLI::App& root);
Command add_sweep(CLI::App& root);

}  // namespace channelscope::cli

#endif  // CHANNELSCOPE_TOOLS_COMMON_HPP_
