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

#ifndef CHANNELSCOPE_SIMULATE_HPP_
#define CHANNELSCOPE_SIMULATE_HPP_

#include <cstdint>

#include "channelscope/measurement.hpp"

namespace channelscope {

// Dephasing law lambda = exp(-S_v(0) t / 2) with S_v(0) = s_v0 10^(s/10).
struct NoiseSweepModel {
  double s_v0_per_ms;  // spectral density at 0 dB, 1/ms
  double duration_ms;  // noise exposure t, ms

  // Throws DomainError unless both are positive and finite.
  void validate() const;
};

double lambda_from_noise(const NoiseSweepModel& model, double s_db);

struct SamplingOptions {
  std::int64_t shots_per_setting = 100;
  std::uint64_t seed = 0;
  // Sample each orientation of the biased detector separately (shots split
  // evenly, odd shot to '+') instead of the combined measurement.
  bool raw_orientations = false;
};

// Binomial counts for the canonical 12 settings. Each setting draws from its
// own generator seeded by (seed, setting index), so the result does not
// depend on evaluation order. Throws DomainError for shots < 1 and
// NotCompletelyPositiveError for non-CP channels.
ExperimentRecord sample_counts(const AffineChannel& channel,
                               const TestStateEnsemble& ensemble,
                               const MeasurementModel& model,
                               const SamplingOptions& options);

// Infinite-statistics limit: frequencies equal probabilities, unit weights.
ObservationSet exact_record(const AffineChannel& channel,
                            const TestStateEnsemble& ensemble,
                            const MeasurementModel& model);

// splitmix64 finaliser; used to derive per-setting seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace channelscope

#endif  // CHANNELSCOPE_SIMULATE_HPP_
