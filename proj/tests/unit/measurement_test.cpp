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

#include <random>

#include <gtest/gtest.h>

#include "channelscope/measurement.hpp"
#include "support/reference_data.hpp"
#include "support/random_channels.hpp"

namespace channelscope {
namespace {

double expectation(const Matrix2c& effect, const BlochVector& r) {
  return (effect * r.density_matrix()).trace().real();
}

TestStateEnsemble random_ensemble(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  TestStateEnsemble::Columns r = TestStateEnsemble::ideal().r() * 0.8;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) += u(rng);
  return TestStateEnsemble(r);
}

TEST(MeasurementModel, Validation) {
  EXPECT_THROW(MeasurementModel(0.5), DomainError);
  EXPECT_THROW(MeasurementModel(0.3), DomainError);
  EXPECT_THROW(MeasurementModel(1.1), DomainError);
  EXPECT_THROW(MeasurementModel(0.6, -0.1), DomainError);
  const MeasurementModel m(0.989, 0.986);
  EXPECT_NEAR(m.eta(), 0.9875, 1e-15);
  EXPECT_NEAR(m.contrast(), 0.975, 1e-15);
}

TEST(EffectivePovm, Examples) {
  const Effects sharp = effective_povm(MeasurementModel::sharp(), Axis::z);
  Matrix2c up = Matrix2c::Zero();
  up(0, 0) = 1.0;
  EXPECT_LT(max_abs(sharp.plus - up), 1e-15);
  EXPECT_LT(max_abs(sharp.minus - (Matrix2c::Identity() - up)), 1e-15);
  const Effects e = effective_povm(MeasurementModel(0.988), Axis::z);
  EXPECT_NEAR(e.plus(0, 0).real(), 0.988, 1e-15);
  EXPECT_NEAR(e.plus(1, 1).real(), 0.012, 1e-15);
  EXPECT_LT(std::abs(e.plus(0, 1)), 1e-15);
}

TEST(EffectivePovm, CompleteAndPositive) {
  for (double eta : {0.51, 0.8, 0.988, 1.0})
    for (Axis a : kAxes) {
      const Effects e = effective_povm(MeasurementModel(eta), a);
      EXPECT_LT(max_abs(e.plus + e.minus - Matrix2c::Identity()), 1e-15);
      EXPECT_GE(hermitian_eigenvalues(e.plus).minCoeff(), -1e-15);
      EXPECT_GE(hermitian_eigenvalues(e.minus).minCoeff(), -1e-15);
      const Matrix2c expected = 0.5 * (Matrix2c::Identity() + (2 * eta - 1) * pauli(a));
      EXPECT_LT(max_abs(e.plus - expected), 1e-15);
    }
}

TEST(OrientedPovm, AverageOfOrientationsIsTheCombinedEffect) {
  const MeasurementModel m(0.97, 0.91);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-0.57, 0.57);
  for (int trial = 0; trial < 50; ++trial) {
    const BlochVector r(u(rng), u(rng), u(rng));
    for (Axis a : kAxes) {
      const Effects p = oriented_povm(m, a, Orientation::plus);
      const Effects n = oriented_povm(m, a, Orientation::minus);
      EXPECT_LT(max_abs(p.plus + p.minus - Matrix2c::Identity()), 1e-15);
      EXPECT_LT(max_abs(n.plus + n.minus - Matrix2c::Identity()), 1e-15);
      const double f = combine_inverted(expectation(p.plus, r), expectation(n.minus, r));
      EXPECT_NEAR(f, expectation(effective_povm(m, a).plus, r), 1e-15);
    }
  }
}

TEST(CombineInverted, Examples) {
  EXPECT_EQ(combine_inverted(1.0, 0.0), 1.0);
  EXPECT_EQ(combine_inverted(0.5, 0.5), 0.5);
  EXPECT_NEAR(combine_inverted(0.9, 0.2), 0.85, 1e-15);
  EXPECT_THROW(combine_inverted(1.1, 0.0), DomainError);
  EXPECT_THROW(combine_inverted(0.5, -0.1), DomainError);
}

TEST(States, NamesRoundTrip) {
  for (StateId id : {StateId::plus_x, StateId::minus_x, StateId::plus_y, StateId::minus_y,
                     StateId::plus_z, StateId::minus_z}) {
    EXPECT_EQ(parse_state(state_name(id)), id);
    EXPECT_NEAR(ideal_state(id).norm(), 1.0, 1e-15);
  }
  EXPECT_FALSE(parse_state("+w").has_value());
  EXPECT_EQ(parse_axis("y"), Axis::y);
  EXPECT_FALSE(parse_axis("q").has_value());
  EXPECT_EQ(canonical_index(StateId::minus_z), 3);
  EXPECT_FALSE(canonical_index(StateId::minus_x).has_value());
}

TEST(PredictPlus, Examples) {
  const TestStateEnsemble ideal = TestStateEnsemble::ideal();
  EXPECT_NEAR(predict_plus(AffineChannel::identity(), ideal_state(StateId::plus_z), Axis::z,
                           MeasurementModel::sharp()),
              1.0, 1e-15);
  const ProbabilityTable a0 = predict_probabilities(AffineChannel::full_contraction(), ideal,
                                                    MeasurementModel(0.9));
  for (Axis a : kAxes)
    for (int k = 0; k < 4; ++k) EXPECT_EQ(a0.at(a, k), 0.5);
  const double p = predict_plus(phase_damping(0.63), ideal_state(StateId::plus_x), Axis::x,
                                MeasurementModel(0.988));
  EXPECT_NEAR(p, 0.5 * (1 + 0.976 * 0.63), 1e-12);
  EXPECT_NEAR(p, 0.8074, 5e-5);
}

TEST(PredictProbabilities, AgreesWithBornRule) {
  std::mt19937_64 rng(9);
  const MeasurementModel m(0.93);
  for (int trial = 0; trial < 50; ++trial) {
    const AffineChannel e = testing::random_cp_channel(rng);
    const TestStateEnsemble ens = random_ensemble(rng);
    const ProbabilityTable t = predict_probabilities(e, ens, m);
    const auto minus = t.minus();
    for (Axis a : kAxes)
      for (int k = 0; k < 4; ++k) {
        const Matrix2c out = e.apply(BlochVector(ens.r().col(k)).density_matrix());
        EXPECT_NEAR(t.at(a, k), (effective_povm(m, a).plus * out).trace().real(), 1e-14);
        EXPECT_EQ(t.at(a, k) + minus[index(a)][k], 1.0);
      }
  }
}

TEST(PredictProbabilities, AffineInMvAndR) {
  std::mt19937_64 rng(10);
  const MeasurementModel m(0.95);
  const TestStateEnsemble ens = random_ensemble(rng);
  const AffineChannel e1 = testing::random_affine(rng);
  const AffineChannel e2 = testing::random_affine(rng);
  const double t = 0.3;
  const AffineChannel mix(t * e1.matrix() + (1 - t) * e2.matrix(),
                          t * e1.translation() + (1 - t) * e2.translation());
  const BlochVector r1(0.1, 0.2, 0.3);
  const BlochVector r2(-0.4, 0.0, 0.5);
  const BlochVector rmix(t * r1.components() + (1 - t) * r2.components());
  for (Axis a : kAxes) {
    const double pm = predict_plus(mix, r1, a, m);
    EXPECT_NEAR(pm, t * predict_plus(e1, r1, a, m) + (1 - t) * predict_plus(e2, r1, a, m),
                1e-15);
    EXPECT_NEAR(predict_plus(e1, rmix, a, m),
                t * predict_plus(e1, r1, a, m) + (1 - t) * predict_plus(e1, r2, a, m), 1e-15);
  }
  (void)ens;
}

TEST(DataMatrix, Examples) {
  FrequencyTable half;
  for (Axis a : kAxes)
    for (int k = 0; k < 4; ++k) half.set(a, k, 0.5);
  const DataMatrix dm = data_matrix_from_frequencies(half);
  EXPECT_EQ(dm.D, Matrix3::Zero());
  EXPECT_EQ(dm.d, Vector3::Zero());

  const FrequencyTable id = FrequencyTable::from_observations(
      exact_record(AffineChannel::identity(), TestStateEnsemble::ideal(), MeasurementModel::sharp()));
  EXPECT_EQ(id.at(Axis::z, 2), 1.0);
  EXPECT_EQ(id.at(Axis::z, 3), 0.0);
  const DataMatrix idm = data_matrix_from_frequencies(id);
  EXPECT_EQ(idm.D(2, 2), 1.0);
  EXPECT_EQ(idm.d(2), 0.0);

  const FrequencyTable back = frequencies_from_data_matrix(DataMatrix{});
  for (Axis a : kAxes)
    for (int k = 0; k < 4; ++k) EXPECT_EQ(back.at(a, k), 0.5);

  const FrequencyTable f4 = frequencies_from_data_matrix(testing::reference_pd_d4());
  EXPECT_NEAR(f4.at(Axis::x, 0), 0.735, 1e-15);
}

TEST(DataMatrix, MissingSettingsAreListed) {
  FrequencyTable t;
  for (Axis a : kAxes)
    for (int k = 0; k < 4; ++k)
      if (!(a == Axis::y && k == 3)) t.set(a, k, 0.5);
  try {
    data_matrix_from_frequencies(t);
    FAIL() << "expected IncompleteDataError";
  } catch (const IncompleteDataError& e) {
    ASSERT_EQ(e.missing().size(), 1u);
    EXPECT_NE(e.missing()[0].find("-z"), std::string::npos);
  }
}

TEST(DataMatrix, RoundTrips) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    FrequencyTable t;
    for (Axis a : kAxes)
      for (int k = 0; k < 4; ++k) t.set(a, k, u(rng));
    const FrequencyTable back = frequencies_from_data_matrix(data_matrix_from_frequencies(t));
    for (Axis a : kAxes)
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(back.at(a, k), t.at(a, k), 1e-15);
    const DataMatrix dm = data_matrix_from_frequencies(t);
    const DataMatrix dm2 = data_matrix_from_frequencies(frequencies_from_data_matrix(dm));
    EXPECT_LT((dm2.D - dm.D).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((dm2.d - dm.d).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(DataMatrix, InfeasibleInputIsRejected) {
  DataMatrix dm;
  dm.D(0, 0) = 1.5;
  EXPECT_THROW(frequencies_from_data_matrix(dm), InfeasibleDataError);
}

TEST(DataMatrix, PureStatesSharpMeasurementGiveTheChannel) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const AffineChannel e = testing::random_cp_channel(rng);
    const DataMatrix dm = data_matrix_from_frequencies(FrequencyTable::from_observations(
        exact_record(e, TestStateEnsemble::ideal(), MeasurementModel::sharp())));
    EXPECT_LT((dm.D - e.matrix()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((dm.d - e.translation()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Ensemble, IdealStateTomography) {
  const TestStateEnsemble ens =
      ensemble_from_state_tomography(DataMatrix{Matrix3::Identity(), Vector3::Zero()},
                                     MeasurementModel::sharp());
  EXPECT_LT((ens.q_matrix() - Matrix3::Identity()).norm(), 1e-15);
  EXPECT_LT(ens.q_vector().norm(), 1e-15);
  for (double f : ens.preparation_fidelities()) EXPECT_NEAR(f, 1.0, 1e-15);
}

TEST(Ensemble, ReferenceStateTomography) {
  const TestStateEnsemble ens = testing::reference_ensemble();
  const double k = 2 * testing::kReferenceEta - 1;
  EXPECT_LT((ens.r().col(0) - Vector3(0.836, -0.005, -0.019) / k).norm(), 1e-12);
  const auto fid = ens.preparation_fidelities();
  const double expected[] = {0.928, 0.907, 0.909, 0.913};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(fid[i], expected[i], 5e-4) << i;
  EXPECT_LT((ens.q_matrix() - testing::reference_d0().D / k).norm(), 1e-12);
  EXPECT_LT((ens.q_vector() - testing::reference_d0().d / k).norm(), 1e-12);
}

TEST(Ensemble, QMatrixDefinition) {
  std::mt19937_64 rng(14);
  const TestStateEnsemble ens = random_ensemble(rng);
  const auto& r = ens.r();
  for (int l = 0; l < 3; ++l) {
    EXPECT_NEAR(ens.q_vector()(l), 0.5 * (r(l, 2) + r(l, 3)), 1e-15);
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(ens.q_matrix()(l, k), r(l, k) - 0.5 * (r(l, 2) + r(l, 3)), 1e-15);
  }
}

TEST(Ensemble, RejectsSingularAndUnphysical) {
  TestStateEnsemble::Columns r = TestStateEnsemble::ideal().r();
  r.col(1) = r.col(0);
  EXPECT_THROW(TestStateEnsemble{r}, IllConditionedError);
  r = TestStateEnsemble::ideal().r();
  r(0, 0) = 1.2;
  EXPECT_THROW(TestStateEnsemble{r}, DomainError);
}

TEST(Ensemble, IdealHasExtraStates) {
  const TestStateEnsemble ens = TestStateEnsemble::ideal();
  ASSERT_TRUE(ens.state(StateId::minus_x).has_value());
  EXPECT_NEAR(ens.state(StateId::minus_x)->x(), -1.0, 1e-15);
  EXPECT_FALSE(testing::reference_ensemble().state(StateId::minus_y).has_value());
}

TEST(ExperimentRecord, MergesOrientations) {
  ExperimentRecord rec;
  rec.add({StateId::plus_x, Axis::x, Orientation::plus, 90, 10});
  rec.add({StateId::plus_x, Axis::x, Orientation::minus, 80, 20});
  rec.add({StateId::plus_z, Axis::y, Orientation::plus, 30, 70});
  const ObservationSet obs = rec.observations();
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0].state, StateId::plus_x);
  EXPECT_NEAR(obs[0].frequency, 0.85, 1e-15);
  EXPECT_EQ(obs[0].weight, 200.0);
  EXPECT_NEAR(obs[1].frequency, 0.3, 1e-15);
  EXPECT_EQ(obs[1].weight, 100.0);
  EXPECT_THROW(rec.add({StateId::plus_x, Axis::x, Orientation::plus, -1, 10}), DomainError);
  EXPECT_THROW(rec.add({StateId::plus_x, Axis::x, Orientation::plus, 0, 0}), DomainError);
}

}  // namespace
}  // namespace channelscope
