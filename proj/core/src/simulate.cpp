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

#include "channelscope/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "channelscope/errors.hpp"

namespace channelscope {

void NoiseSweepModel::validate() const {
  if (!(std::isfinite(s_v0_per_ms) && s_v0_per_ms > 0.0))
    throw DomainError("NoiseSweepModel: s_v0 must be positive");
  if (!(std::isfinite(duration_ms) && duration_ms > 0.0))
    throw DomainError("NoiseSweepModel: duration must be positive");
}

double lambda_from_noise(const NoiseSweepModel& model, double s_db) {
  model.validate();
  const double spectral_density = model.s_v0_per_ms * std::pow(10.0, s_db / 10.0);
  return std::exp(-spectral_density * model.duration_ms / 2.0);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void require_cp(const AffineChannel& channel) {
  const CpReport report = is_completely_positive(channel);
  if (!report.cp)
    throw NotCompletelyPositiveError(
        "channel is not completely positive (min Choi eigenvalue " +
            std::to_string(report.min_eigenvalue) + ")",
        report);
}

std::int64_t draw(std::mt19937_64& rng, std::int64_t shots, double p) {
  std::binomial_distribution<std::int64_t> binomial(shots, std::clamp(p, 0.0, 1.0));
  return binomial(rng);
}

}  // namespace

ExperimentRecord sample_counts(const AffineChannel& channel,
                               const TestStateEnsemble& ensemble,
                               const MeasurementModel& model,
                               const SamplingOptions& options) {
  if (options.shots_per_setting < 1)
    throw DomainError("sample_counts: shots per setting must be >= 1");
  require_cp(channel);

  ExperimentRecord record;
  std::uint64_t stream = 0;
  for (int col = 0; col < 4; ++col) {
    const StateId state = kCanonicalStates[col];
    const Matrix2c rho =
        BlochVector(Vector3(ensemble.r().col(col))).density_matrix();
    const Matrix2c out = channel.apply(rho);
    for (Axis axis : kAxes) {
      std::mt19937_64 rng(mix_seed(options.seed, stream++));
      if (!options.raw_orientations) {
        const double p = predict_plus(channel, BlochVector(Vector3(ensemble.r().col(col))),
                                      axis, model);
        const std::int64_t plus = draw(rng, options.shots_per_setting, p);
        record.add({state, axis, Orientation::plus, plus,
                    options.shots_per_setting - plus});
        continue;
      }
      const std::int64_t half_minus = options.shots_per_setting / 2;
      const std::int64_t half_plus = options.shots_per_setting - half_minus;
      for (auto [orientation, shots] :
           {std::pair{Orientation::plus, half_plus},
            std::pair{Orientation::minus, half_minus}}) {
        if (shots == 0) continue;
        const Effects e = oriented_povm(model, axis, orientation);
        const double p = (e.plus * out).trace().real();
        const std::int64_t plus = draw(rng, shots, p);
        record.add({state, axis, orientation, plus, shots - plus});
      }
    }
  }
  return record;
}

ObservationSet exact_record(const AffineChannel& channel,
                            const TestStateEnsemble& ensemble,
                            const MeasurementModel& model) {
  require_cp(channel);
  const ProbabilityTable p = predict_probabilities(channel, ensemble, model);
  ObservationSet out;
  for (int col = 0; col < 4; ++col)
    for (Axis axis : kAxes)
      out.push_back(Observation{kCanonicalStates[col], axis,
                                std::clamp(p.at(axis, col), 0.0, 1.0), 1.0});
  return out;
}

}  // namespace channelscope
