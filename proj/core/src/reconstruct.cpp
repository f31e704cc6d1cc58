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

#include "channelscope/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "channelscope/errors.hpp"
#include "channelscope/optimize.hpp"
#include "channelscope/simulate.hpp"

namespace channelscope {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::linear:
      return "linear";
    case Method::linear_regularized:
      return "linear-regularized";
    case Method::maximum_likelihood:
      break;
  }
  return "ml";
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::phase_damping:
      return "phase_damping";
    case Family::rotated_phase_damping:
      return "rotated_pd";
    case Family::rotation_damping:
      break;
  }
  return "rotation_damping";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::phase_damping, Family::rotated_phase_damping,
                   Family::rotation_damping})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

EstimateReport linear_inverse(const DataMatrix& dm,
                              const TestStateEnsemble& ensemble,
                              const MeasurementModel& model) {
  if (!dm.D.allFinite() || !dm.d.allFinite())
    throw ContractError("linear_inverse: non-finite data matrix");
  const Matrix3& q = ensemble.q_matrix();
  const Eigen::FullPivLU<Matrix3> lu(q);
  if (!lu.isInvertible())
    throw IllConditionedError("linear_inverse: Q is singular",
                              ensemble.condition_number());
  const double contrast = model.contrast();
  const Matrix3 m = dm.D * lu.inverse() / contrast;
  const Vector3 v = dm.d / contrast - m * ensemble.q_vector();

  EstimateReport report;
  report.channel = AffineChannel(m, v);
  report.method = Method::linear;
  report.cp = is_completely_positive(report.channel);
  return report;
}

EstimateReport regularize(EstimateReport report) {
  const double c = max_cp_mixing(report.channel);
  report.channel = mix_with_white_noise(report.channel, c);
  report.regularization_c = c;
  if (report.method == Method::linear) report.method = Method::linear_regularized;
  report.cp = is_completely_positive(report.channel);
  return report;
}

namespace {

// Observation resolved against the ensemble.
struct Term {
  Vector3 state;
  int axis;
  double frequency;
  double weight;
};

std::vector<Term> resolve(const ObservationSet& observations,
                          const TestStateEnsemble& ensemble) {
  std::vector<Term> terms;
  terms.reserve(observations.size());
  for (const auto& o : observations) {
    if (!(o.frequency >= 0.0 && o.frequency <= 1.0))
      throw DomainError("log_likelihood: frequency outside [0, 1]");
    if (!(o.weight >= 0.0))
      throw DomainError("log_likelihood: negative weight");
    if (const auto state = ensemble.state(o.state))
      terms.push_back(Term{state->components(), index(o.axis), o.frequency, o.weight});
  }
  return terms;
}

LikelihoodValue evaluate(const Matrix3& m, const Vector3& v,
                         const std::vector<Term>& terms, double contrast,
                         double weight_scale) {
  LikelihoodValue out;
  for (const auto& t : terms) {
    const double signal = contrast * (v(t.axis) + m.row(t.axis).dot(t.state));
    double p_plus = 0.5 * (1.0 + signal);
    double p_minus = 0.5 * (1.0 - signal);
    if (p_plus < kProbabilityFloor) {
      p_plus = kProbabilityFloor;
      ++out.clipped_terms;
    }
    if (p_minus < kProbabilityFloor) {
      p_minus = kProbabilityFloor;
      ++out.clipped_terms;
    }
    double term = 0.0;
    if (t.frequency > 0.0) term += t.frequency * std::log(p_plus);
    if (t.frequency < 1.0) term += (1.0 - t.frequency) * std::log(p_minus);
    out.value += t.weight * weight_scale * term;
  }
  return out;
}

// Lower-triangular complex 4x4 factor from 16 reals: four real diagonal
// entries followed by (re, im) pairs of the strictly lower part, row-major.
Matrix4c factor_from_parameters(const Eigen::VectorXd& x) {
  Matrix4c a = Matrix4c::Zero();
  Eigen::Index k = 0;
  for (int i = 0; i < 4; ++i) a(i, i) = x(k++);
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < i; ++j) {
      a(i, j) = Complex(x(k), x(k + 1));
      k += 2;
    }
  return a;
}

Eigen::VectorXd parameters_from_factor(const Matrix4c& a) {
  Eigen::VectorXd x(16);
  Eigen::Index k = 0;
  for (int i = 0; i < 4; ++i) x(k++) = a(i, i).real();
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < i; ++j) {
      x(k++) = a(i, j).real();
      x(k++) = a(i, j).imag();
    }
  return x;
}

// Trace-preserving Choi state for the parameters, or nullopt when the input
// marginal is singular.
std::optional<Matrix4c> choi_from_parameters(const Eigen::VectorXd& x) {
  const Matrix4c a = factor_from_parameters(x);
  const Matrix4c raw = a * a.adjoint();
  Matrix2c n_inv_sqrt;
  if (!inverse_sqrt_2x2(2.0 * trace_first(raw), n_inv_sqrt)) return std::nullopt;
  const Matrix4c k = kron(Matrix2c::Identity(), n_inv_sqrt);
  return Matrix4c(k * raw * k);
}

struct PauliBasis {
  Matrix4c output[3];          // sigma_j (x) I
  Matrix4c product[3][3];      // sigma_j (x) sigma_k^T
  PauliBasis() {
    for (Axis j : kAxes) {
      output[index(j)] = kron(pauli(j), Matrix2c::Identity());
      for (Axis k : kAxes)
        product[index(j)][index(k)] = kron(pauli(j), pauli(k).transpose());
    }
  }
};

void affine_from_choi(const Matrix4c& w, Matrix3& m, Vector3& v) {
  static const PauliBasis basis;
  for (int j = 0; j < 3; ++j) {
    v(j) = (basis.output[j].cwiseProduct(w.transpose())).sum().real();
    for (int k = 0; k < 3; ++k)
      m(j, k) = (basis.product[j][k].cwiseProduct(w.transpose())).sum().real();
  }
}

std::optional<Eigen::VectorXd> warm_start(const ObservationSet& observations,
                                          const TestStateEnsemble& ensemble,
                                          const MeasurementModel& model) {
  const FrequencyTable table = FrequencyTable::from_observations(observations);
  if (!table.complete()) return std::nullopt;
  const EstimateReport start =
      regularize(linear_inverse(data_matrix_from_frequencies(table), ensemble, model));
  const Matrix4c w = affine_to_choi(start.channel).matrix() +
                     1e-13 * Matrix4c::Identity();
  const Eigen::LLT<Matrix4c> llt(w);
  if (llt.info() != Eigen::Success) return std::nullopt;
  return parameters_from_factor(llt.matrixL());
}

}  // namespace

LikelihoodValue log_likelihood(const AffineChannel& channel,
                               const ObservationSet& observations,
                               const TestStateEnsemble& ensemble,
                               const MeasurementModel& model) {
  return evaluate(channel.matrix(), channel.translation(),
                  resolve(observations, ensemble), model.contrast(), 1.0);
}

EstimateReport ml_estimate(const ObservationSet& observations,
                           const TestStateEnsemble& ensemble,
                           const MeasurementModel& model,
                           const MlOptions& options) {
  if (options.restarts < 1) throw DomainError("ml_estimate: restarts must be >= 1");
  const std::vector<Term> terms = resolve(observations, ensemble);
  const FrequencyTable table = FrequencyTable::from_observations(observations);
  if (!options.allow_rank_deficient && !table.complete())
    throw IncompleteDataError(
        "ml_estimate: the canonical 12-setting design is incomplete; set "
        "allow_rank_deficient to proceed",
        table.missing());
  if (terms.empty()) throw IncompleteDataError("ml_estimate: no usable settings", {});

  double total_weight = 0.0;
  for (const auto& t : terms) total_weight += t.weight;
  if (!(total_weight > 0.0)) throw DomainError("ml_estimate: zero total weight");
  // Objective on the frequency-weighted scale: weights relative to the mean.
  const double weight_scale = static_cast<double>(terms.size()) / total_weight;
  const double contrast = model.contrast();

  const Objective objective = [&](const Eigen::VectorXd& x) {
    const auto w = choi_from_parameters(x);
    if (!w) return -std::numeric_limits<double>::infinity();
    Matrix3 m;
    Vector3 v;
    affine_from_choi(*w, m, v);
    return evaluate(m, v, terms, contrast, weight_scale).value;
  };

  BfgsOptions bfgs;
  bfgs.max_evaluations = options.max_evaluations;

  const std::optional<Eigen::VectorXd> warm =
      table.complete() ? warm_start(observations, ensemble, model) : std::nullopt;

  std::vector<OptimizeResult> runs;
  runs.reserve(static_cast<std::size_t>(options.restarts));
  for (int r = 0; r < options.restarts; ++r) {
    Eigen::VectorXd x0(16);
    if (r == 0 && warm) {
      x0 = *warm;
    } else {
      std::mt19937_64 rng(mix_seed(options.seed, static_cast<std::uint64_t>(r)));
      std::normal_distribution<double> normal;
      for (Eigen::Index i = 0; i < 16; ++i) x0(i) = normal(rng);
    }
    runs.push_back(bfgs_maximize(objective, x0, bfgs));
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value > runs[best].value) best = r;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& run : runs)
    if (run.converged && std::isfinite(run.value)) {
      lo = std::min(lo, run.value);
      hi = std::max(hi, run.value);
    }

  const auto w = choi_from_parameters(runs[best].x);
  if (!w) throw ContractError("ml_estimate: optimizer ended at a singular point");

  EstimateReport report;
  report.channel = choi_to_affine(ChoiMatrix(*w / w->trace()));
  report.method = Method::maximum_likelihood;
  report.cp = is_completely_positive(report.channel);
  const LikelihoodValue l = log_likelihood(report.channel, observations, ensemble, model);
  report.log_likelihood = l.value;
  report.clipped_terms = l.clipped_terms;
  report.iterations = runs[best].iterations;
  report.converged = runs[best].converged;
  report.restart_spread = hi >= lo ? hi - lo : 0.0;
  report.suspicious = report.restart_spread > 1e-3;
  return report;
}

AffineChannel FamilyEstimate::channel() const {
  const Angle a = angle.value_or(Angle{});
  switch (family) {
    case Family::phase_damping:
      return phase_damping(lambda);
    case Family::rotated_phase_damping:
      return rotated_phase_damping(lambda, a);
    case Family::rotation_damping:
      break;
  }
  return rotation_damping(lambda, a);
}

namespace {

double wrap(double value, double period) {
  const double r = std::fmod(value, period);
  return r < 0.0 ? r + period : r;
}

}  // namespace

FamilyEstimate constrained_ml(const ObservationSet& observations,
                              const TestStateEnsemble& ensemble,
                              const MeasurementModel& model, Family family,
                              const FamilyOptions& options) {
  const std::vector<Term> terms = resolve(observations, ensemble);
  if (terms.empty()) throw IncompleteDataError("constrained_ml: no usable settings", {});
  const double contrast = model.contrast();

  FamilyEstimate out;
  out.family = family;

  const auto score = [&](const AffineChannel& e) {
    return evaluate(e.matrix(), e.translation(), terms, contrast, 1.0).value;
  };

  if (family == Family::phase_damping) {
    const auto l_of = [&](double lambda) {
      return score(phase_damping(std::clamp(lambda, -1.0, 1.0)));
    };
    const int steps = static_cast<int>(std::lround(2.0 / options.lambda_step));
    double best_lambda = -1.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
      const double lambda = std::min(1.0, -1.0 + i * options.lambda_step);
      const double value = l_of(lambda);
      if (value > best_value) {
        best_value = value;
        best_lambda = lambda;
      }
    }
    const ScalarOptimum refined = golden_section_maximize(
        l_of, std::max(-1.0, best_lambda - options.lambda_step),
        std::min(1.0, best_lambda + options.lambda_step), options.lambda_tolerance);
    out.lambda = std::clamp(refined.x, -1.0, 1.0);
    out.log_likelihood = refined.value;
    out.converged = true;
    return out;
  }

  const bool rotated = family == Family::rotated_phase_damping;
  const double period = rotated ? 180.0 : 360.0;
  const auto make = [&](double lambda, double degrees) {
    return rotated ? rotated_phase_damping(lambda, Angle::degrees(degrees))
                   : rotation_damping(lambda, Angle::degrees(degrees));
  };

  const int lambda_steps = static_cast<int>(std::lround(1.0 / options.lambda_step));
  const int angle_steps =
      static_cast<int>(std::lround(period / options.angle_step_degrees));
  double best_lambda = 0.0;
  double best_angle = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= lambda_steps; ++i) {
    const double lambda = std::min(1.0, i * options.lambda_step);
    for (int k = 0; k < angle_steps; ++k) {
      const double degrees = k * options.angle_step_degrees;
      const double value = score(make(lambda, degrees));
      if (value > best_value) {
        best_value = value;
        best_lambda = lambda;
        best_angle = degrees;
      }
    }
  }

  const Objective objective = [&](const Eigen::VectorXd& x) {
    const double lambda = std::clamp(x(0), 0.0, 1.0);
    const double excess = x(0) - lambda;
    return score(make(lambda, x(1))) - 1e3 * excess * excess;
  };
  NelderMeadOptions nm;
  nm.x_tolerance = std::min(options.lambda_tolerance, options.angle_tolerance_degrees);
  const OptimizeResult refined = nelder_mead_maximize(
      objective, Eigen::Vector2d(best_lambda, best_angle),
      Eigen::Vector2d(0.5 * options.lambda_step, 0.5 * options.angle_step_degrees), nm);

  const double lambda = std::clamp(refined.x(0), 0.0, 1.0);
  const double degrees = wrap(refined.x(1), period);
  const double refined_value = score(make(lambda, degrees));
  if (refined_value >= best_value) {
    out.lambda = lambda;
    out.angle = Angle::degrees(degrees);
    out.log_likelihood = refined_value;
  } else {
    out.lambda = best_lambda;
    out.angle = Angle::degrees(best_angle);
    out.log_likelihood = best_value;
  }
  out.converged = refined.converged;
  return out;
}

double lambda_bar(const AffineChannel& channel) {
  return 0.5 * (channel.matrix()(0, 0) + channel.matrix()(1, 1));
}

}  // namespace channelscope
