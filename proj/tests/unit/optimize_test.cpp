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

#include <cmath>

#include <gtest/gtest.h>

#include "channelscope/optimize.hpp"

namespace channelscope {
namespace {

TEST(Bfgs, ConcaveQuadratic) {
  const Eigen::Vector3d center(1.0, -2.0, 0.5);
  const auto f = [&](const Eigen::VectorXd& x) {
    const Eigen::Vector3d d = x - center;
    return -(d(0) * d(0) + 10 * d(1) * d(1) + 0.1 * d(2) * d(2) + d(0) * d(1));
  };
  const OptimizeResult r = bfgs_maximize(f, Eigen::VectorXd::Zero(3));
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.x - center).norm(), 1e-5);
}

TEST(Bfgs, Rosenbrock) {
  const auto f = [](const Eigen::VectorXd& x) {
    return -(std::pow(1 - x(0), 2) + 100 * std::pow(x(1) - x(0) * x(0), 2));
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  const OptimizeResult r = bfgs_maximize(f, x0);
  EXPECT_LT((r.x - Eigen::Vector2d(1, 1)).norm(), 1e-3);
}

TEST(Bfgs, RespectsInfeasibleRegion) {
  const auto f = [](const Eigen::VectorXd& x) {
    return x(0) > 2.0 ? -INFINITY : -std::pow(x(0) - 3.0, 2);
  };
  const OptimizeResult r = bfgs_maximize(f, Eigen::VectorXd::Zero(1));
  EXPECT_LE(r.x(0), 2.0);
  EXPECT_GT(r.x(0), 1.9);
}

TEST(NelderMead, Quadratic) {
  const auto f = [](const Eigen::VectorXd& x) {
    return -(std::pow(x(0) - 0.3, 2) + 3 * std::pow(x(1) + 0.7, 2));
  };
  const OptimizeResult r =
      nelder_mead_maximize(f, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Constant(2, 0.1));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 0.3, 1e-6);
  EXPECT_NEAR(r.x(1), -0.7, 1e-6);
}

TEST(GoldenSection, FindsInteriorAndBoundaryMaxima) {
  const ScalarOptimum a =
      golden_section_maximize([](double x) { return -std::pow(x - 0.37, 2); }, 0, 1, 1e-10);
  EXPECT_NEAR(a.x, 0.37, 1e-9);
  const ScalarOptimum b = golden_section_maximize([](double x) { return x; }, 0, 1, 1e-10);
  EXPECT_NEAR(b.x, 1.0, 1e-9);
}

}  // namespace
}  // namespace channelscope
