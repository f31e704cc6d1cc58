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

#include "channelscope/measurement.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "channelscope/errors.hpp"

namespace channelscope {

namespace {

Matrix2c projector(Axis axis, int sign) {
  return 0.5 * (Matrix2c::Identity() + static_cast<double>(sign) * pauli(axis));
}

std::string setting_name(Axis axis, int column) {
  std::string name = "axis ";
  name += axis_name(axis);
  name += " / state ";
  name += state_name(kCanonicalStates[column]);
  return name;
}

}  // namespace

MeasurementModel::MeasurementModel(double eta0, double eta1)
    : eta0_(eta0), eta1_(eta1) {
  if (!(eta0 >= 0.0 && eta0 <= 1.0 && eta1 >= 0.0 && eta1 <= 1.0))
    throw DomainError("MeasurementModel: detection probabilities must lie in [0, 1]");
  if (!(eta() > 0.5))
    throw DomainError(
        "MeasurementModel: eta = (eta0 + eta1)/2 must exceed 1/2, otherwise "
        "2 eta - 1 <= 0 and the data cannot be inverted");
}

Effects effective_povm(const MeasurementModel& model, Axis axis) {
  const double eta = model.eta();
  Effects out;
  out.plus = eta * projector(axis, +1) + (1.0 - eta) * projector(axis, -1);
  out.minus = Matrix2c::Identity() - out.plus;
  return out;
}

Effects oriented_povm(const MeasurementModel& model, Axis axis,
                      Orientation orientation) {
  const Matrix2c up = projector(axis, +1);
  const Matrix2c down = projector(axis, -1);
  const double eta0 = model.eta0();
  const double eta1 = model.eta1();
  Effects out;
  if (orientation == Orientation::plus) {
    out.plus = eta0 * up + (1.0 - eta1) * down;
    out.minus = (1.0 - eta0) * up + eta1 * down;
  } else {
    out.minus = eta0 * down + (1.0 - eta1) * up;
    out.plus = (1.0 - eta0) * down + eta1 * up;
  }
  return out;
}

double combine_inverted(double c_plus, double c_minus_inverted) {
  if (!(c_plus >= 0.0 && c_plus <= 1.0 && c_minus_inverted >= 0.0 &&
        c_minus_inverted <= 1.0))
    throw DomainError("combine_inverted: frequencies must lie in [0, 1]");
  return 0.5 * (c_plus + (1.0 - c_minus_inverted));
}

std::string_view state_name(StateId id) {
  switch (id) {
    case StateId::plus_x:
      return "+x";
    case StateId::minus_x:
      return "-x";
    case StateId::plus_y:
      return "+y";
    case StateId::minus_y:
      return "-y";
    case StateId::plus_z:
      return "+z";
    case StateId::minus_z:
      break;
  }
  return "-z";
}

std::optional<StateId> parse_state(std::string_view name) {
  for (StateId id : {StateId::plus_x, StateId::minus_x, StateId::plus_y,
                     StateId::minus_y, StateId::plus_z, StateId::minus_z})
    if (state_name(id) == name) return id;
  return std::nullopt;
}

std::optional<Axis> parse_axis(std::string_view name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  return std::nullopt;
}

std::optional<int> canonical_index(StateId id) {
  switch (id) {
    case StateId::plus_x:
      return 0;
    case StateId::plus_y:
      return 1;
    case StateId::plus_z:
      return 2;
    case StateId::minus_z:
      return 3;
    default:
      return std::nullopt;
  }
}

BlochVector ideal_state(StateId id) {
  switch (id) {
    case StateId::plus_x:
      return {1, 0, 0};
    case StateId::minus_x:
      return {-1, 0, 0};
    case StateId::plus_y:
      return {0, 1, 0};
    case StateId::minus_y:
      return {0, -1, 0};
    case StateId::plus_z:
      return {0, 0, 1};
    case StateId::minus_z:
      break;
  }
  return {0, 0, -1};
}

TestStateEnsemble::TestStateEnsemble(const Columns& r) : r_(r) {
  for (int col = 0; col < 4; ++col) {
    const BlochVector state(Vector3(r_.col(col)));
    if (!state.is_physical())
      throw DomainError("TestStateEnsemble: state " +
                        std::string(state_name(kCanonicalStates[col])) +
                        " has Bloch norm " + std::to_string(state.norm()) +
                        " > 1");
  }
  q_vec_ = 0.5 * (r_.col(2) + r_.col(3));
  for (int k = 0; k < 3; ++k) q_.col(k) = r_.col(k) - q_vec_;

  const Eigen::JacobiSVD<Matrix3> svd(q_);
  const Vector3 sigma = svd.singularValues();
  condition_ = sigma(2) > 0.0 ? sigma(0) / sigma(2)
                              : std::numeric_limits<double>::infinity();
  if (!(sigma(2) > 1e-12 * sigma(0)))
    throw IllConditionedError(
        "TestStateEnsemble: Q is singular (condition number " +
            std::to_string(condition_) + ")",
        condition_);
}

TestStateEnsemble TestStateEnsemble::ideal() {
  Columns r;
  for (int col = 0; col < 4; ++col)
    r.col(col) = ideal_state(kCanonicalStates[col]).components();
  return TestStateEnsemble(r)
      .with_extra_state(StateId::minus_x, ideal_state(StateId::minus_x))
      .with_extra_state(StateId::minus_y, ideal_state(StateId::minus_y));
}

std::optional<BlochVector> TestStateEnsemble::state(StateId id) const {
  if (const auto col = canonical_index(id))
    return BlochVector(Vector3(r_.col(*col)));
  return id == StateId::minus_x ? minus_x_ : minus_y_;
}

TestStateEnsemble TestStateEnsemble::with_extra_state(StateId id,
                                                      const BlochVector& r) const {
  if (!r.is_physical())
    throw DomainError("TestStateEnsemble: extra state is not physical");
  TestStateEnsemble out = *this;
  switch (id) {
    case StateId::minus_x:
      out.minus_x_ = r;
      break;
    case StateId::minus_y:
      out.minus_y_ = r;
      break;
    default:
      out.r_.col(*canonical_index(id)) = r.components();
      out = TestStateEnsemble(out.r_);
      out.minus_x_ = minus_x_;
      out.minus_y_ = minus_y_;
  }
  return out;
}

std::array<double, 4> TestStateEnsemble::preparation_fidelities() const {
  std::array<double, 4> out{};
  for (int col = 0; col < 4; ++col)
    out[col] = 0.5 * (1.0 + r_.col(col).dot(
                                ideal_state(kCanonicalStates[col]).components()));
  return out;
}

ExperimentRecord::ExperimentRecord(std::vector<SettingCounts> settings) {
  for (const auto& s : settings) add(s);
}

void ExperimentRecord::add(const SettingCounts& setting) {
  if (setting.counts_plus < 0 || setting.counts_minus < 0)
    throw DomainError("ExperimentRecord: negative counts");
  if (setting.shots() < 1)
    throw DomainError("ExperimentRecord: setting with zero shots");
  settings_.push_back(setting);
}

ObservationSet ExperimentRecord::observations() const {
  struct Tally {
    std::int64_t plus[2] = {0, 0};
    std::int64_t minus[2] = {0, 0};
  };
  std::vector<std::pair<StateId, Axis>> order;
  std::map<std::pair<StateId, Axis>, Tally> tallies;
  for (const auto& s : settings_) {
    const auto key = std::make_pair(s.state, s.axis);
    if (!tallies.contains(key)) order.push_back(key);
    const int o = s.orientation == Orientation::plus ? 0 : 1;
    tallies[key].plus[o] += s.counts_plus;
    tallies[key].minus[o] += s.counts_minus;
  }

  ObservationSet out;
  for (const auto& key : order) {
    const Tally& t = tallies[key];
    const std::int64_t shots_plus = t.plus[0] + t.minus[0];
    const std::int64_t shots_minus = t.plus[1] + t.minus[1];
    double f;
    if (shots_plus > 0 && shots_minus > 0) {
      f = combine_inverted(
          static_cast<double>(t.plus[0]) / static_cast<double>(shots_plus),
          static_cast<double>(t.minus[1]) / static_cast<double>(shots_minus));
    } else if (shots_plus > 0) {
      f = static_cast<double>(t.plus[0]) / static_cast<double>(shots_plus);
    } else {
      f = static_cast<double>(t.plus[1]) / static_cast<double>(shots_minus);
    }
    out.push_back(Observation{key.first, key.second, f,
                              static_cast<double>(shots_plus + shots_minus)});
  }
  return out;
}

void FrequencyTable::set(Axis axis, int column, double f) {
  if (!(f >= 0.0 && f <= 1.0))
    throw DomainError("FrequencyTable: frequency outside [0, 1] for " +
                      setting_name(axis, column));
  f_[index(axis)][column] = f;
}

double FrequencyTable::at(Axis axis, int column) const {
  const auto f = get(axis, column);
  if (!f)
    throw IncompleteDataError("FrequencyTable: missing " +
                                  setting_name(axis, column),
                              {setting_name(axis, column)});
  return *f;
}

std::vector<std::string> FrequencyTable::missing() const {
  std::vector<std::string> out;
  for (Axis axis : kAxes)
    for (int col = 0; col < 4; ++col)
      if (!get(axis, col)) out.push_back(setting_name(axis, col));
  return out;
}

FrequencyTable FrequencyTable::from_observations(const ObservationSet& observations) {
  FrequencyTable table;
  for (const auto& o : observations)
    if (const auto col = canonical_index(o.state)) table.set(o.axis, *col, o.frequency);
  return table;
}

ObservationSet FrequencyTable::to_observations(double weight) const {
  ObservationSet out;
  for (int col = 0; col < 4; ++col)
    for (Axis axis : kAxes)
      if (const auto f = get(axis, col))
        out.push_back(Observation{kCanonicalStates[col], axis, *f, weight});
  return out;
}

Eigen::Matrix4d DataMatrix::augmented() const {
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  out(0, 0) = 1.0;
  out.block<3, 1>(1, 0) = d;
  out.block<3, 3>(1, 1) = D;
  return out;
}

std::array<std::array<double, 4>, 3> ProbabilityTable::minus() const {
  std::array<std::array<double, 4>, 3> out{};
  for (int j = 0; j < 3; ++j)
    for (int col = 0; col < 4; ++col) out[j][col] = 1.0 - plus[j][col];
  return out;
}

double predict_plus(const AffineChannel& channel, const BlochVector& state,
                    Axis axis, const MeasurementModel& model) {
  const int j = index(axis);
  const double signal = channel.translation()(j) +
                        channel.matrix().row(j).dot(state.components());
  return 0.5 * (1.0 + model.contrast() * signal);
}

ProbabilityTable predict_probabilities(const AffineChannel& channel,
                                       const TestStateEnsemble& ensemble,
                                       const MeasurementModel& model) {
  ProbabilityTable table;
  bool in_range = true;
  for (Axis axis : kAxes) {
    for (int col = 0; col < 4; ++col) {
      const double p = predict_plus(channel, BlochVector(Vector3(ensemble.r().col(col))),
                                    axis, model);
      table.plus[index(axis)][col] = p;
      in_range = in_range && p >= -1e-9 && p <= 1.0 + 1e-9;
    }
  }
  if (!in_range && is_completely_positive(channel).cp)
    throw ContractError(
        "predict_probabilities: CP channel produced a probability outside "
        "[0, 1]");
  return table;
}

DataMatrix data_matrix_from_frequencies(const FrequencyTable& table) {
  const auto missing = table.missing();
  if (!missing.empty()) {
    std::ostringstream what;
    what << "incomplete data: " << missing.size() << " missing setting(s):";
    for (const auto& m : missing) what << " [" << m << "]";
    throw IncompleteDataError(what.str(), missing);
  }
  DataMatrix dm;
  for (Axis axis : kAxes) {
    const int j = index(axis);
    const double plus_z = table.at(axis, 2);
    const double minus_z = table.at(axis, 3);
    for (int k = 0; k < 3; ++k)
      dm.D(j, k) = 2.0 * table.at(axis, k) - plus_z - minus_z;
    dm.d(j) = plus_z + minus_z - 1.0;
  }
  return dm;
}

FrequencyTable frequencies_from_data_matrix(const DataMatrix& dm) {
  if (!dm.D.allFinite() || !dm.d.allFinite())
    throw InfeasibleDataError("data matrix has non-finite entries");
  FrequencyTable table;
  std::vector<std::string> bad;
  for (Axis axis : kAxes) {
    const int j = index(axis);
    const double f[4] = {
        0.5 * (dm.D(j, 0) + dm.d(j) + 1.0),
        0.5 * (dm.D(j, 1) + dm.d(j) + 1.0),
        0.5 * (dm.d(j) + 1.0 + dm.D(j, 2)),
        0.5 * (dm.d(j) + 1.0 - dm.D(j, 2)),
    };
    for (int col = 0; col < 4; ++col) {
      if (f[col] < -1e-9 || f[col] > 1.0 + 1e-9) {
        bad.push_back(setting_name(axis, col) + " = " + std::to_string(f[col]));
        continue;
      }
      table.set(axis, col, std::clamp(f[col], 0.0, 1.0));
    }
  }
  if (!bad.empty()) {
    std::string what = "infeasible data matrix, recovered frequencies outside [0, 1]:";
    for (const auto& b : bad) what += " [" + b + "]";
    throw InfeasibleDataError(what);
  }
  return table;
}

TestStateEnsemble ensemble_from_state_tomography(const DataMatrix& dm0,
                                                 const MeasurementModel& model) {
  const Eigen::JacobiSVD<Matrix3> svd(dm0.D);
  const Vector3 sigma = svd.singularValues();
  const double condition = sigma(2) > 0.0 ? sigma(0) / sigma(2)
                                          : std::numeric_limits<double>::infinity();
  if (!(sigma(2) > 1e-12 * sigma(0)))
    throw IllConditionedError("ensemble_from_state_tomography: D0 is singular "
                              "(condition number " + std::to_string(condition) + ")",
                              condition);

  const FrequencyTable f = frequencies_from_data_matrix(dm0);
  TestStateEnsemble::Columns r;
  for (Axis axis : kAxes)
    for (int col = 0; col < 4; ++col)
      r(index(axis), col) = (2.0 * f.at(axis, col) - 1.0) / model.contrast();
  return TestStateEnsemble(r);
}

}  // namespace channelscope
