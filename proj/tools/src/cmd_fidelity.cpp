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

#include <iostream>
#include <memory>

#include "common.hpp"

namespace channelscope::cli {

namespace {

struct FidelityState {
  std::string first;
  std::string second;
};

int fidelity(const FidelityState& s) {
  const AffineChannel a = io::parse_channel(io::read_json_file(s.first)).channel;
  const AffineChannel b = io::parse_channel(io::read_json_file(s.second)).channel;
  std::cout << fixed4(process_fidelity(a, b)) << '\n';
  return kExitOk;
}

}  // namespace

Command add_fidelity(CLI::App& root) {
  auto state = std::make_shared<FidelityState>();
  CLI::App* app = root.add_subcommand("fidelity", "process fidelity of two channel files");
  app->add_option("first", state->first, "channel JSON")->required()->check(CLI::ExistingFile);
  app->add_option("second", state->second, "channel JSON")->required()->check(CLI::ExistingFile);
  return {app, [state] { return fidelity(*state); }, nullptr};
}

}  // namespace channelscope::cli
