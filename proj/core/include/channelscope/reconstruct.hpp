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

#ifndef CHANNELSCOPE_RECONSTRUCT_HPP_
#define CHANNELSCOPE_RECONSTRUCT_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "channelscope/measurement.hpp"

namespace channelscope {

enum class Method { linear, linear_regularized, maximum_likelihood };

std::string_view method_name(Method method);

struct EstimateReport {
  AffineChannel channel;
  Method method = Method::linear;
  CpReport cp;
  double log_likelihood = 0.0;  // natural log, see log_likelihood()
  int clipped_terms = 0;
  std::optional<double> regularization_c;
  int iterations = 0;
  bool converged = true;
  // Maximum likelihood only: spread of the converged restarts' objective and
  // whether it exceeds 1e-3.
  double restart_spread = 0.0;
  bool suspicious = false;
};

// M = D Q^-1 / (2 eta - 1), v = d / (2 eta - 1) - M q. No CP projection; the
// CP report is attached. log_likelihood is left at 0.
EstimateReport linear_inverse(const DataMatrix& dm,
                              const TestStateEnsemble& ensemble,
                              const MeasurementModel& model);

// Replaces the channel by its largest CP mixture with white noise.
EstimateReport regularize(EstimateReport report);

inline constexpr double kProbabilityFloor = 1e-12;

struct LikelihoodValue {
  double value = 0.0;
  int clipped_terms = 0;
};

// sum_settings weight * [f log p + (1 - f) log(1 - p)], probabilities clipped
// below at kProbabilityFloor. Settings whose state has no column in the
// ensemble are skipped.
LikelihoodValue log_likelihood(const AffineChannel& channel,
                               const ObservationSet& observations,
                               const TestStateEnsemble& ensemble,
                               const MeasurementModel& model);

struct MlOptions {
  int restarts = 10;
  int max_evaluations = 50000;  // per restart
  std::uint64_t seed = 0;
  // Permit fewer than the canonical 12 settings.
  bool allow_rank_deficient = false;
};

// Maximum likelihood over CP trace-preserving maps. The Choi state is
// parameterized as A A^dagger with A lower triangular (16 reals) and brought
// to the trace-preserving slice by w -> (I (x) N^-1/2) w (I (x) N^-1/2),
// N = 2 Tr_out w. Restart 0 starts from the regularized linear inverse when
// the canonical design is complete; the others from seeded random A.
EstimateReport ml_estimate(const ObservationSet& observations,
                           const TestStateEnsemble& ensemble,
                           const MeasurementModel& model,
                           const MlOptions& options = {});

enum class Family { phase_damping, rotated_phase_damping, rotation_damping };

std::string_view family_name(Family family);  // phase_damping, rotated_pd, ...
std::optional<Family> parse_family(std::string_view name);

struct FamilyEstimate {
  Family family = Family::phase_damping;
  double lambda = 1.0;
  std::optional<Angle> angle;  // theta or alpha
  double log_likelihood = 0.0;
  bool converged = true;

  AffineChannel channel() const;
};

struct FamilyOptions {
  double lambda_step = 0.01;
  double angle_step_degrees = 1.0;
  double lambda_tolerance = 1e-8;
  double angle_tolerance_degrees = 1e-6;
};

// Grid scan over the family's parameter domain, then local refinement.
// Domains: phase_damping lambda in [-1, 1]; rotated_pd lambda in [0, 1],
// theta in [0, 180) deg; rotation_damping lambda in [0, 1], alpha in
// [0, 360) deg.
FamilyEstimate constrained_ml(const ObservationSet& observations,
                              const TestStateEnsemble& ensemble,
                              const MeasurementModel& model, Family family,
                              const FamilyOptions& options = {});

// (M_xx + M_yy) / 2.
double lambda_bar(const AffineChannel& channel);

}  // namespace channelscope

#endif  // CHANNELSCOPE_RECONSTRUCT_HPP_
