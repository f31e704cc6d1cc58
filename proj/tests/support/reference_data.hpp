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

// Reference matrices from a trapped-ion phase-damping experiment, used as
// fixtures by the unit and acceptance suites.

#ifndef CHANNELSCOPE_TESTS_REFERENCE_DATA_HPP_
#define CHANNELSCOPE_TESTS_REFERENCE_DATA_HPP_

#include <array>

#include "channelscope/channelscope.hpp"

namespace channelscope::testing {

inline constexpr double kReferenceEta = 0.988;

// Rows (d_j, D_jx, D_jy, D_jz).
inline DataMatrix data_matrix_rows(const std::array<std::array<double, 4>, 3>& rows) {
  DataMatrix dm;
  for (int j = 0; j < 3; ++j) {
    dm.d(j) = rows[j][0];
    for (int k = 0; k < 3; ++k) dm.D(j, k) = rows[j][k + 1];
  }
  return dm;
}

// Rows (v_j, M_jx, M_jy, M_jz).
inline AffineChannel channel_rows(const std::array<std::array<double, 4>, 3>& rows) {
  const DataMatrix dm = data_matrix_rows(rows);
  return AffineChannel(dm.D, dm.d);
}

// State tomography of the four test states.
inline DataMatrix reference_d0() {
  return data_matrix_rows({{{0.031, 0.805, 0.004, 0.016},
                            {0.011, -0.016, 0.784, -0.055},
                            {-0.004, -0.015, 0.018, 0.803}}});
}

// Phase damping, -10 dB.
inline DataMatrix reference_pd_d4() {
  return data_matrix_rows({{{-0.09, 0.56, -0.03, 0.05},
                            {0.07, -0.10, 0.49, 0.00},
                            {-0.01, -0.05, -0.01, 0.84}}});
}
inline AffineChannel reference_pd_e4() {
  return channel_rows({{{-0.12, 0.69, -0.04, 0.05},
                        {0.06, 0.13, 0.62, 0.04},
                        {0.00, -0.05, -0.04, 1.04}}});
}
inline AffineChannel reference_pd_e4_ml() {
  return channel_rows({{{-0.17, 0.60, -0.13, 0.16},
                        {0.04, 0.15, 0.60, 0.00},
                        {0.00, -0.15, 0.03, 0.91}}});
}

// Phase damping in the rotated plane, -10 dB.
inline DataMatrix reference_rpd_d4() {
  return data_matrix_rows({{{-0.04, 0.47, -0.08, -0.09},
                            {0.02, 0.05, 0.62, -0.20},
                            {0.00, 0.02, -0.19, 0.62}}});
}
inline AffineChannel reference_rpd_e4() {
  return channel_rows({{{0.02, 0.58, -0.10, -0.14},
                        {0.00, 0.07, 0.79, -0.21},
                        {0.00, 0.03, -0.26, 0.76}}});
}

// Phase-damping parameter estimates at -19, -16, ..., -1 dB.
inline constexpr std::array<double, 7> kSweepDb = {-19, -16, -13, -10, -7, -4, -1};
inline constexpr std::array<double, 7> kLambdaBarRow = {0.94, 0.88, 0.85, 0.66,
                                                        0.42, 0.23, 0.00};
inline constexpr std::array<double, 7> kLambdaEstRow = {0.97, 0.90, 0.85, 0.63,
                                                        0.40, 0.25, -0.01};
inline constexpr double kNoiseDurationMs = 21.6;

inline TestStateEnsemble reference_ensemble() {
  return ensemble_from_state_tomography(reference_d0(), MeasurementModel(kReferenceEta));
}

inline ObservationSet observations_from(const DataMatrix& dm, double weight = 1.0) {
  return frequencies_from_data_matrix(dm).to_observations(weight);
}

}  // namespace channelscope::testing

#endif  // CHANNELSCOPE_TESTS_REFERENCE_DATA_HPP_
