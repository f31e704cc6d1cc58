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

#include <fstream>
#include <iostream>
#include <memory>

#include "common.hpp"

namespace channelscope::cli {

namespace {

struct FitSweepState {
  std::string points;
  double t_ms = 0.0;
  std::string estimator;
  std::string out;
};

int fit_sweep(const FitSweepState& s) {
  std::ifstream in(s.points);
  if (!in) throw FormatError("cannot open " + s.points);
  const std::optional<std::string> filter =
      s.estimator.empty() ? std::nullopt : std::optional<std::string>(s.estimator);
  const std::vector<SweepPoint> points = io::parse_sweep_points(in, filter);
  const SpectralFit fit = fit_spectral_density(points, s.t_ms);
  std::cout << "{\"s_v0\": " << fixed4(fit.s_v0) << ", \"residual\": " << fixed4(fit.residual)
            << ", \"points\": " << points.size() << "}\n";
  if (!s.out.empty()) {
    json doc{{"s_v0", fit.s_v0},
             {"residual", fit.residual},
             {"points", points.size()},
             {"config",
              {{"command", "fit-sweep"},
               {"points", s.points},
               {"t_ms", s.t_ms},
               {"estimator", s.estimator}}}};
    io::write_text_atomic(s.out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

Command add_fit_sweep(CLI::App& root) {
  auto state = std::make_shared<FitSweepState>();
  CLI::App* app = root.add_subcommand(
      "fit-sweep", "fit lambda(s) = exp(-s_v0 10^(s/10) t/2) to a CSV of sweep points");
  app->add_option("points", state->points, "CSV with s_db (or setting) and lambda_hat columns")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--t-ms", state->t_ms, "noise exposure, ms")
      ->required()
      ->check(CLI::PositiveNumber);
  app->add_option("--estimator", state->estimator, "keep only rows of this estimator");
  app->add_option("--out", state->out, "JSON file with full-precision results");
  return {app, [state] { return fit_sweep(*state); }, nullptr};
}

}  // namespace channelscope::cli
