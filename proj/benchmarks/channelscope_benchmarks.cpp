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

#include <random>

#include <benchmark/benchmark.h>

#include "channelscope/channelscope.hpp"

namespace cs = channelscope;

namespace {

cs::DataMatrix state_tomography() {
  cs::DataMatrix dm;
  dm.D << 0.805, 0.004, 0.016, -0.016, 0.784, -0.055, -0.015, 0.018, 0.803;
  dm.d << 0.031, 0.011, -0.004;
  return dm;
}

const cs::MeasurementModel kModel(0.988);

cs::TestStateEnsemble ensemble() {
  return cs::ensemble_from_state_tomography(state_tomography(), kModel);
}

cs::ObservationSet sampled(const cs::AffineChannel& channel, std::uint64_t seed) {
  return cs::sample_counts(channel, ensemble(), kModel, {100, seed, false}).observations();
}

void BM_AffineToChoi(benchmark::State& state) {
  const cs::AffineChannel e = cs::rotation_damping(0.6, cs::Angle::degrees(30));
  for (auto _ : state) benchmark::DoNotOptimize(cs::affine_to_choi(e));
}
BENCHMARK(BM_AffineToChoi);

void BM_HermitianEigen4(benchmark::State& state) {
  const cs::Matrix4c w = cs::affine_to_choi(cs::rotated_phase_damping(0.5, cs::Angle::degrees(42))).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(cs::hermitian_eigen(w));
}
BENCHMARK(BM_HermitianEigen4);

void BM_IsCompletelyPositive(benchmark::State& state) {
  const cs::AffineChannel e = cs::phase_damping(0.63);
  for (auto _ : state) benchmark::DoNotOptimize(cs::is_completely_positive(e));
}
BENCHMARK(BM_IsCompletelyPositive);

void BM_ProcessFidelity(benchmark::State& state) {
  const cs::AffineChannel a = cs::mix_with_white_noise(cs::phase_damping(0.63), 0.9);
  const cs::AffineChannel b = cs::mix_with_white_noise(cs::rotation_damping(0.6, cs::Angle::degrees(20)), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(cs::process_fidelity(a, b));
}
BENCHMARK(BM_ProcessFidelity);

void BM_LinearInverse(benchmark::State& state) {
  const cs::TestStateEnsemble ens = ensemble();
  const cs::DataMatrix dm = cs::data_matrix_from_frequencies(
      cs::FrequencyTable::from_observations(sampled(cs::phase_damping(0.63), 1)));
  for (auto _ : state) benchmark::DoNotOptimize(cs::linear_inverse(dm, ens, kModel));
}
BENCHMARK(BM_LinearInverse);

void BM_SampleCounts(benchmark::State& state) {
  const cs::TestStateEnsemble ens = ensemble();
  const cs::AffineChannel e = cs::phase_damping(0.63);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(cs::sample_counts(e, ens, kModel, {state.range(0), seed++, false}));
}
BENCHMARK(BM_SampleCounts)->Arg(100)->Arg(10000);

void BM_MlEstimate(benchmark::State& state) {
  const cs::TestStateEnsemble ens = ensemble();
  const cs::ObservationSet obs = sampled(cs::phase_damping(0.63), 2);
  const cs::MlOptions opts{static_cast<int>(state.range(0)), 50000, 0, false};
  for (auto _ : state) benchmark::DoNotOptimize(cs::ml_estimate(obs, ens, kModel, opts));
}
BENCHMARK(BM_MlEstimate)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ConstrainedMl(benchmark::State& state) {
  const cs::TestStateEnsemble ens = ensemble();
  const auto family = static_cast<cs::Family>(state.range(0));
  const cs::ObservationSet obs = sampled(cs::rotated_phase_damping(0.5, cs::Angle::degrees(42)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(cs::constrained_ml(obs, ens, kModel, family));
  state.SetLabel(std::string(cs::family_name(family)));
}
BENCHMARK(BM_ConstrainedMl)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
