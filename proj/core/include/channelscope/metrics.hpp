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

#ifndef CHANNELSCOPE_METRICS_HPP_
#define CHANNELSCOPE_METRICS_HPP_

#include <span>
#include <string>

#include "channelscope/qchannel.hpp"

namespace channelscope {

// F = tr sqrt(sqrt(w1) w2 sqrt(w1)) on unit-trace Choi states. Both channels
// must be CP within 1e-7; throws NotCompletelyPositiveError otherwise.
double process_fidelity(const AffineChannel& first, const AffineChannel& second);

struct SweepPoint {
  double s_db = 0.0;
  double lambda_hat = 0.0;
  std::string estimator;
};

struct SpectralFit {
  double s_v0 = 0.0;     // 1/ms
  double residual = 0.0;  // sum of squared lambda residuals
};

// Least-squares fit of lambda(s) = exp(-s_v0 10^(s/10) t/2) to the points.
// Throws DomainError for an empty list, fewer than two points or t <= 0.
SpectralFit fit_spectral_density(std::span<const SweepPoint> points,
                                 double duration_ms);

}  // namespace channelscope

#endif  // CHANNELSCOPE_METRICS_HPP_
