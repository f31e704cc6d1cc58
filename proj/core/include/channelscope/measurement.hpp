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

#ifndef CHANNELSCOPE_MEASUREMENT_HPP_
#define CHANNELSCOPE_MEASUREMENT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "channelscope/qchannel.hpp"

namespace channelscope {

// Biased two-outcome detection. eta0 / eta1 are the probabilities of
// identifying |0> / |1> correctly; eta is their mean after combining both
// measurement orientations.
class MeasurementModel {
 public:
  // Symmetric detector, eta0 = eta1 = eta.
  explicit MeasurementModel(double eta) : MeasurementModel(eta, eta) {}
  // Throws DomainError unless both lie in [0, 1] and (eta0 + eta1)/2 > 1/2.
  MeasurementModel(double eta0, double eta1);

  static MeasurementModel sharp() { return MeasurementModel(1.0); }

  double eta0() const { return eta0_; }
  double eta1() const { return eta1_; }
  double eta() const { return 0.5 * (eta0_ + eta1_); }
  // 2 eta - 1, the factor by which the effects shrink the Bloch ball.
  double contrast() const { return eta0_ + eta1_ - 1.0; }

 private:
  double eta0_;
  double eta1_;
};

enum class Orientation { plus, minus };

struct Effects {
  Matrix2c plus;
  Matrix2c minus;
};

// F+- = [I +- (2 eta - 1) sigma_j] / 2, the combined measurement Sigma_j.
Effects effective_povm(const MeasurementModel& model, Axis axis);

// Effects of a single biased orientation, labelled by the logical outcome
// +j / -j. Orientation::minus inverts the qubit before detection.
Effects oriented_povm(const MeasurementModel& model, Axis axis,
                      Orientation orientation);

// f = [c+ + (1 - c-)] / 2 with c- the frequency of the -j outcome in the
// orientation-inverted run.
double combine_inverted(double c_plus, double c_minus_inverted);

enum class StateId { plus_x, minus_x, plus_y, minus_y, plus_z, minus_z };

inline constexpr StateId kCanonicalStates[] = {StateId::plus_x, StateId::plus_y,
                                               StateId::plus_z, StateId::minus_z};

std::string_view state_name(StateId id);  // "+x", "-z", ...
std::optional<StateId> parse_state(std::string_view name);
std::optional<Axis> parse_axis(std::string_view name);
// Column of the canonical design (+x, +y, +z, -z), or nullopt.
std::optional<int> canonical_index(StateId id);
// Ideal pure-state Bloch vector of the id.
BlochVector ideal_state(StateId id);

// Test states as a 3x4 matrix of Bloch columns for +x, +y, +z, -z, optionally
// extended by -x and -y (used only by maximum likelihood).
class TestStateEnsemble {
 public:
  using Columns = Eigen::Matrix<double, 3, 4>;

  // Throws DomainError for unphysical columns and IllConditionedError when Q
  // is singular.
  explicit TestStateEnsemble(const Columns& r);

  static TestStateEnsemble ideal();

  const Columns& r() const { return r_; }
  // Q_lk = R_l,+k - (R_l,+z + R_l,-z)/2 for k = x, y, z.
  const Matrix3& q_matrix() const { return q_; }
  // q_l = (R_l,+z + R_l,-z)/2.
  const Vector3& q_vector() const { return q_vec_; }
  double condition_number() const { return condition_; }

  std::optional<BlochVector> state(StateId id) const;
  TestStateEnsemble with_extra_state(StateId id, const BlochVector& r) const;

  // <+-k| rho_+-k |+-k> for the canonical columns.
  std::array<double, 4> preparation_fidelities() const;

 private:
  Columns r_;
  Matrix3 q_;
  Vector3 q_vec_;
  double condition_;
  std::optional<BlochVector> minus_x_;
  std::optional<BlochVector> minus_y_;
};

// Raw counts of one (state, axis, orientation) setting. counts_plus and
// counts_minus count the logical +j / -j outcomes.
struct SettingCounts {
  StateId state;
  Axis axis;
  Orientation orientation = Orientation::plus;
  std::int64_t counts_plus = 0;
  std::int64_t counts_minus = 0;

  std::int64_t shots() const { return counts_plus + counts_minus; }
  double frequency_plus() const {
    return static_cast<double>(counts_plus) / static_cast<double>(shots());
  }
};

// Frequency of the +j outcome of the combined measurement Sigma_j on one test
// state, with the statistical weight (shots) it carries in the likelihood.
struct Observation {
  StateId state;
  Axis axis;
  double frequency;
  double weight = 1.0;
};

using ObservationSet = std::vector<Observation>;

class ExperimentRecord {
 public:
  ExperimentRecord() = default;
  explicit ExperimentRecord(std::vector<SettingCounts> settings);

  // Throws DomainError for negative counts or zero shots.
  void add(const SettingCounts& setting);
  const std::vector<SettingCounts>& settings() const { return settings_; }
  bool empty() const { return settings_.empty(); }

  // Merges orientations with combine_inverted; weight is the total shots of
  // the merged settings. Settings appear in first-occurrence order.
  ObservationSet observations() const;

 private:
  std::vector<SettingCounts> settings_;
};

// Combined +j frequencies of the canonical 12 settings, indexed by
// (axis, canonical column).
class FrequencyTable {
 public:
  std::optional<double> get(Axis axis, int column) const {
    return f_[index(axis)][column];
  }
  // Throws DomainError when f is outside [0, 1].
  void set(Axis axis, int column, double f);
  double at(Axis axis, int column) const;  // throws if missing

  std::vector<std::string> missing() const;
  bool complete() const { return missing().empty(); }

  static FrequencyTable from_observations(const ObservationSet& observations);
  ObservationSet to_observations(double weight = 1.0) const;

 private:
  std::array<std::array<std::optional<double>, 4>, 3> f_{};
};

// The data representation (d, D) of a frequency table.
struct DataMatrix {
  Matrix3 D = Matrix3::Zero();
  Vector3 d = Vector3::Zero();

  // [[1, 0], [d, D]].
  Eigen::Matrix4d augmented() const;
};

// Probability of the +j outcome; the -j outcome is 1 - p.
struct ProbabilityTable {
  std::array<std::array<double, 4>, 3> plus{};
  double at(Axis axis, int column) const { return plus[index(axis)][column]; }
  std::array<std::array<double, 4>, 3> minus() const;
};

// p+-j = [1 +- (2 eta - 1)(v_j + sum_l R_l M_jl)] / 2 for a state with Bloch
// vector R.
double predict_plus(const AffineChannel& channel, const BlochVector& state,
                    Axis axis, const MeasurementModel& model);

ProbabilityTable predict_probabilities(const AffineChannel& channel,
                                       const TestStateEnsemble& ensemble,
                                       const MeasurementModel& model);

// Throws IncompleteDataError listing absent settings.
DataMatrix data_matrix_from_frequencies(const FrequencyTable& table);

// Algebraic inverse. Throws InfeasibleDataError when a recovered frequency is
// outside [0, 1] by more than 1e-9.
FrequencyTable frequencies_from_data_matrix(const DataMatrix& dm);

// Q = D0/(2 eta - 1), q = d0/(2 eta - 1); columns R from the recovered state
// tomography frequencies.
TestStateEnsemble ensemble_from_state_tomography(const DataMatrix& dm0,
                                                 const MeasurementModel& model);

}  // namespace channelscope

#endif  // CHANNELSCOPE_MEASUREMENT_HPP_
