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

#include "channelscope/metrics.hpp"

#include <cmath>
#include <limits>

#include "channelscope/errors.hpp"
#include "channelscope/optimize.hpp"
#include "channelscope/simulate.hpp"

namespace channelscope {

namespace {

constexpr double kFidelityCpTolerance = 1e-7;

const Matrix4c& checked_choi(const AffineChannel& channel, const ChoiMatrix& choi,
                             const char* which) {
  const CpReport report = is_completely_positive(channel, kFidelityCpTolerance);
  if (!report.cp)
    throw NotCompletelyPositiveError(
        std::string("process_fidelity: ") + which +
            " channel is not CP (min Choi eigenvalue " +
            std::to_string(report.min_eigenvalue) + ")",
        report);
  return choi.matrix();
}

}  // namespace

double process_fidelity(const AffineChannel& first, const AffineChannel& second) {
  const ChoiMatrix c1 = affine_to_choi(first);
  const ChoiMatrix c2 = affine_to_choi(second);
  const Matrix4c& w1 = checked_choi(first, c1, "first");
  const Matrix4c& w2 = checked_choi(second, c2, "second");
  const ComplexMatrix root = psd_sqrt(w1, kFidelityCpTolerance);
  ComplexMatrix inner = root * w2 * root;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  return psd_sqrt(inner, kFidelityCpTolerance).trace().real();
}

SpectralFit fit_spectral_density(std::span<const SweepPoint> points,
                                 double duration_ms) {
  if (points.empty()) throw DomainError("fit_spectral_density: no points");
  if (points.size() < 2)
    throw DomainError("fit_spectral_density: need at least two points");
  if (!(duration_ms > 0.0 && std::isfinite(duration_ms)))
    throw DomainError("fit_spectral_density: duration must be positive");
  for (const auto& p : points)
    if (!std::isfinite(p.s_db) || !std::isfinite(p.lambda_hat))
      throw DomainError("fit_spectral_density: non-finite point");

  const auto residual = [&](double s_v0) {
    double sum = 0.0;
    for (const auto& p : points) {
      const double model =
          lambda_from_noise(NoiseSweepModel{s_v0, duration_ms}, p.s_db);
      sum += (p.lambda_hat - model) * (p.lambda_hat - model);
    }
    return sum;
  };

  // Bracket the minimum on a logarithmic grid, then golden-section in log s_v0.
  const double log_lo = std::log(1e-8);
  const double log_hi = std::log(1e4);
  constexpr int kGrid = 400;
  double best_log = log_lo;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double x = log_lo + (log_hi - log_lo) * i / kGrid;
    const double r = residual(std::exp(x));
    if (r < best) {
      best = r;
      best_log = x;
    }
  }
  const double cell = (log_hi - log_lo) / kGrid;
  const ScalarOptimum opt = golden_section_maximize(
      [&](double x) { return -residual(std::exp(x)); },
      std::max(log_lo, best_log - cell), std::min(log_hi, best_log + cell), 1e-12);
  return SpectralFit{std::exp(opt.x), -opt.value};
}

}  // namespace channelscope
