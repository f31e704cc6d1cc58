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

#ifndef CHANNELSCOPE_OPTIMIZE_HPP_
#define CHANNELSCOPE_OPTIMIZE_HPP_

#include <functional>

#include <Eigen/Dense>

namespace channelscope {

// Small dense maximizers used by the estimators. Objective values of NaN or
// -inf mark infeasible points and are never accepted.

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;  // accepted steps
  bool converged = false;
};

struct BfgsOptions {
  double gradient_step = 1e-6;    // central differences
  double value_tolerance = 1e-9;  // |dL| per accepted step
  int stall_steps = 10;           // successive small steps to stop
  int max_evaluations = 50000;
  // Stationarity test used when no further ascent step can be accepted.
  double gradient_tolerance = 1e-6;
};

// Quasi-Newton ascent with numerical gradients and Armijo backtracking.
OptimizeResult bfgs_maximize(const Objective& f, Eigen::VectorXd x0,
                             const BfgsOptions& options = {});

struct NelderMeadOptions {
  double x_tolerance = 1e-9;
  double f_tolerance = 1e-13;
  int max_evaluations = 20000;
};

// Downhill simplex (maximizing). `steps` gives the initial simplex edge per
// coordinate.
OptimizeResult nelder_mead_maximize(const Objective& f, Eigen::VectorXd x0,
                                    const Eigen::VectorXd& steps,
                                    const NelderMeadOptions& options = {});

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal function on [lo, hi],
// stopping when the bracket is narrower than `tolerance`.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tolerance);

}  // namespace channelscope

#endif  // CHANNELSCOPE_OPTIMIZE_HPP_
