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

struct SimulateState {
  ChannelSpec channel;
  EnsembleSpec ensemble;
  ModelSpec model;
  std::int64_t shots = 100;
  std::uint64_t seed = 0;
  bool raw_orientations = false;
  std::string out = "-";
};

int simulate(const SimulateState& s) {
  const std::optional<MeasurementModel> model = s.model.build();
  if (!model) throw UsageError("simulate needs --eta or --eta0/--eta1");
  const AffineChannel channel = s.channel.build();
  const CpReport cp = is_completely_positive(channel);
  if (!cp.cp) throw NotCompletelyPositiveError("simulate: the channel is not completely positive", cp);
  const TestStateEnsemble ensemble = s.ensemble.build(*model);

  json config{{"command", "simulate"},
              {"channel", s.channel.to_json()},
              {"ensemble", s.ensemble.to_json()},
              {"shots", s.shots},
              {"seed", s.seed},
              {"raw_orientations", s.raw_orientations}};
  config.update(s.model.to_json());

  const ExperimentRecord record =
      sample_counts(channel, ensemble, *model, {s.shots, s.seed, s.raw_orientations});
  write_output(s.out, io::counts_to_json(record, *model, config).dump(2) + "\n");

  const DataMatrix dm =
      data_matrix_from_frequencies(FrequencyTable::from_observations(record.observations()));
  std::cerr << "data matrix of the generated counts (d | D):\n";
  const char axes[] = {'x', 'y', 'z'};
  for (int j = 0; j < 3; ++j) {
    std::cerr << "  " << axes[j] << ": " << fixed4(dm.d(j)) << " |";
    for (int k = 0; k < 3; ++k) std::cerr << ' ' << fixed4(dm.D(j, k));
    std::cerr << '\n';
  }
  return kExitOk;
}

}  // namespace

Command add_simulate(CLI::App& root) {
  auto state = std::make_shared<SimulateState>();
  CLI::App* app = root.add_subcommand("simulate", "sample measurement counts from a channel");
  state->channel.add_options(*app);
  state->ensemble.add_options(*app);
  state->model.add_options(*app);
  app->add_option("--shots", state->shots, "shots per setting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--seed", state->seed, "random seed")->capture_default_str();
  app->add_flag("--raw-orientations", state->raw_orientations,
                "sample both detector orientations separately");
  app->add_option("--out", state->out, "counts JSON file ('-' for stdout)")->capture_default_str();
  return {app, [state] { return simulate(*state); },
          [state](const json& channel) { state->channel.inline_channel = channel; }};
}

}  // namespace channelscope::cli
