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

#include "channelscope/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace channelscope {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Counted {
  const Objective& f;
  int evaluations = 0;

  double operator()(const Eigen::VectorXd& x) {
    ++evaluations;
    const double value = f(x);
    return std::isnan(value) ? kNegInf : value;
  }
};

Eigen::VectorXd numerical_gradient(Counted& f, const Eigen::VectorXd& x,
                                   double fx, double h) {
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    if (std::isfinite(up) && std::isfinite(down))
      grad(i) = (up - down) / (2.0 * h);
    else if (std::isfinite(up))
      grad(i) = (up - fx) / h;
    else if (std::isfinite(down))
      grad(i) = (fx - down) / h;
    else
      grad(i) = 0.0;
  }
  return grad;
}

}  // namespace

OptimizeResult bfgs_maximize(const Objective& objective, Eigen::VectorXd x,
                             const BfgsOptions& options) {
  Counted f{objective};
  const Eigen::Index n = x.size();
  OptimizeResult result;

  double fx = f(x);
  if (!std::isfinite(fx)) {
    result.x = x;
    result.value = fx;
    result.evaluations = f.evaluations;
    return result;
  }
  Eigen::VectorXd grad = numerical_gradient(f, x, fx, options.gradient_step);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian of -f
  bool h_is_identity = true;
  int stalled = 0;

  while (f.evaluations < options.max_evaluations) {
    // Ascent direction for f (descent for -f).
    Eigen::VectorXd dir = h * grad;
    if (grad.dot(dir) <= 0.0) {
      h.setIdentity();
      h_is_identity = true;
      dir = grad;
    }
    const double limit = 10.0 * (1.0 + x.norm());
    if (dir.norm() > limit) dir *= limit / dir.norm();

    const double slope = grad.dot(dir);
    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new;
    double f_new = kNegInf;
    for (int k = 0; k < 60 && f.evaluations < options.max_evaluations; ++k) {
      x_new = x + t * dir;
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new >= fx + 1e-4 * t * slope && f_new >= fx) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }

    if (!accepted) {
      if (!h_is_identity) {
        h.setIdentity();
        h_is_identity = true;
        continue;
      }
      result.converged = grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance;
      break;
    }

    const double gain = f_new - fx;
    const Eigen::VectorXd grad_new =
        numerical_gradient(f, x_new, f_new, options.gradient_step);
    const Eigen::VectorXd s = x_new - x;
    // y for the minimized function -f.
    const Eigen::VectorXd y = grad - grad_new;
    x = x_new;
    fx = f_new;
    grad = grad_new;
    ++result.iterations;

    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      const Eigen::VectorXd hy = h * y;
      const double yhy = y.dot(hy);
      h += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
           (hy * s.transpose() + s * hy.transpose()) / sy;
      h_is_identity = false;
    }

    stalled = std::abs(gain) < options.value_tolerance ? stalled + 1 : 0;
    if (stalled >= options.stall_steps) {
      result.converged = true;
      break;
    }
  }

  result.x = x;
  result.value = fx;
  result.evaluations = f.evaluations;
  return result;
}

OptimizeResult nelder_mead_maximize(const Objective& objective, Eigen::VectorXd x0,
                                    const Eigen::VectorXd& steps,
                                    const NelderMeadOptions& options) {
  Counted f{objective};
  const Eigen::Index n = x0.size();
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i + 1)](i) += steps(i);
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  OptimizeResult result;
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& p : simplex)
      diameter = std::max(diameter, (p - simplex[best]).lpNorm<Eigen::Infinity>());
    const double spread = values[best] - values[worst];
    if (std::isfinite(spread) && spread <= options.f_tolerance &&
        diameter <= options.x_tolerance) {
      result.converged = true;
      break;
    }
    if (diameter <= 1e-15 * (1.0 + simplex[best].norm())) {
      result.converged = true;
      break;
    }
    if (f.evaluations >= options.max_evaluations) break;
    ++result.iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double f_reflected = f(reflected);
    if (f_reflected > values[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double f_expanded = f(expanded);
      if (f_expanded > f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected > values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected > values[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
    const double f_contracted = f(contracted);
    if (f_contracted > std::max(values[worst], outside ? f_reflected : kNegInf)) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.evaluations = f.evaluations;
  return result;
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tolerance) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  // Compare the interior probes with the bracket ends; the optimum may sit on
  // the boundary of the domain.
  ScalarOptimum best{0.5 * (a + b), f(0.5 * (a + b))};
  for (double x : {lo, hi, c, d}) {
    const double value = f(x);
    if (value > best.value) best = {x, value};
  }
  return best;
}

}  // namespace channelscope
