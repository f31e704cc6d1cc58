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
#include <random>

#include <gtest/gtest.h>

#include "channelscope/metrics.hpp"
#include "channelscope/reconstruct.hpp"
#include "channelscope/simulate.hpp"
#include "support/reference_data.hpp"
#include "support/random_channels.hpp"

namespace channelscope {
namespace {

using testing::reference_ensemble;

DataMatrix exact_data(const AffineChannel& e, const TestStateEnsemble& ens,
                      const MeasurementModel& model) {
  return data_matrix_from_frequencies(
      FrequencyTable::from_observations(exact_record(e, ens, model)));
}

TEST(LinearInverse, IdealEnsembleSharpIsIdentityMap) {
  const DataMatrix dm = testing::reference_pd_d4();
  const EstimateReport r =
      linear_inverse(dm, TestStateEnsemble::ideal(), MeasurementModel::sharp());
  EXPECT_LT((r.channel.matrix() - dm.D).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((r.channel.translation() - dm.d).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(r.method, Method::linear);
}

TEST(LinearInverse, ReferencePhaseDampingData) {
  const EstimateReport r = linear_inverse(testing::reference_pd_d4(), reference_ensemble(),
                                          MeasurementModel(testing::kReferenceEta));
  const Matrix3& m = r.channel.matrix();
  EXPECT_NEAR(m(0, 0), 0.69, 0.015);
  EXPECT_NEAR(m(0, 1), -0.04, 0.015);
  EXPECT_NEAR(m(0, 2), 0.05, 0.015);
  EXPECT_NEAR(r.channel.translation()(0), -0.12, 0.015);
  EXPECT_NEAR(m(2, 2), 1.04, 0.015);
  EXPECT_FALSE(r.cp.cp);
}

TEST(LinearInverse, ClosedFormAgainstDataMatrixQuotient) {
  // E = Phi D D0^-1 Phi^-1 on augmented 4x4 matrices, Phi = diag(1, 1/(2 eta - 1)).
  const double k = 2 * testing::kReferenceEta - 1;
  Eigen::Matrix4d phi = Eigen::Matrix4d::Identity() / k;
  phi(0, 0) = 1.0;
  const Eigen::Matrix4d expected = phi * testing::reference_pd_d4().augmented() *
                                   testing::reference_d0().augmented().inverse() *
                                   phi.inverse();
  const EstimateReport r = linear_inverse(testing::reference_pd_d4(), reference_ensemble(),
                                          MeasurementModel(testing::kReferenceEta));
  EXPECT_LT((r.channel.augmented() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LinearInverse, RecoversRandomChannelsFromExactData) {
  std::mt19937_64 rng(31);
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  for (int trial = 0; trial < 200; ++trial) {
    const AffineChannel e = testing::random_cp_channel(rng);
    const EstimateReport r = linear_inverse(exact_data(e, ens, model), ens, model);
    EXPECT_LT(r.channel.max_abs_difference(e), 1e-10);
  }
}

TEST(LinearInverse, ReproducesInputFrequencies) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  for (int trial = 0; trial < 100; ++trial) {
    FrequencyTable t;
    for (Axis a : kAxes)
      for (int k = 0; k < 4; ++k) t.set(a, k, u(rng));
    const EstimateReport r = linear_inverse(data_matrix_from_frequencies(t), ens, model);
    const ProbabilityTable p = predict_probabilities(r.channel, ens, model);
    for (Axis a : kAxes)
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(p.at(a, k), t.at(a, k), 1e-12);
  }
}

TEST(Regularize, Examples) {
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  const EstimateReport cp = regularize(
      linear_inverse(exact_data(phase_damping(0.3), ens, model), ens, model));
  EXPECT_EQ(cp.regularization_c, 1.0);
  EXPECT_EQ(cp.method, Method::linear_regularized);
  EXPECT_LT(cp.channel.max_abs_difference(phase_damping(0.3)), 1e-10);

  const EstimateReport e4 = regularize(linear_inverse(testing::reference_pd_d4(), ens, model));
  ASSERT_TRUE(e4.regularization_c.has_value());
  EXPECT_LT(*e4.regularization_c, 1.0);
  EXPECT_TRUE(e4.cp.cp);
  EXPECT_TRUE(is_completely_positive(e4.channel).cp);
}

TEST(LogLikelihood, Examples) {
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(0.95);
  ObservationSet obs = testing::observations_from(testing::reference_pd_d4(), 3.0);
  const LikelihoodValue a0 =
      log_likelihood(AffineChannel::full_contraction(), obs, ens, model);
  EXPECT_NEAR(a0.value, -36.0 * std::log(2.0), 1e-12);
  EXPECT_EQ(a0.clipped_terms, 0);
}

TEST(LogLikelihood, GibbsInequalityAtTheTruth) {
  std::mt19937_64 rng(33);
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(0.988);
  for (int trial = 0; trial < 30; ++trial) {
    const AffineChannel e = testing::random_cp_channel(rng);
    const ObservationSet obs = exact_record(e, ens, model);
    const double at_truth = log_likelihood(e, obs, ens, model).value;
    for (int k = 0; k < 10; ++k) {
      const AffineChannel other = testing::random_cp_channel(rng);
      EXPECT_LE(log_likelihood(other, obs, ens, model).value, at_truth + 1e-12);
    }
  }
}

TEST(LogLikelihood, ClipsImpossibleEvents) {
  ObservationSet obs = {{StateId::plus_z, Axis::z, 0.9, 1.0}};
  const LikelihoodValue v = log_likelihood(AffineChannel::identity(), obs,
                                           TestStateEnsemble::ideal(), MeasurementModel::sharp());
  EXPECT_EQ(v.clipped_terms, 1);
  EXPECT_NEAR(v.value, 0.1 * std::log(kProbabilityFloor), 1e-9);
}

TEST(MlEstimate, ExactPhaseDampingData) {
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  const AffineChannel truth = phase_damping(0.5);
  const EstimateReport r = ml_estimate(exact_record(truth, ens, model), ens, model);
  EXPECT_EQ(r.method, Method::maximum_likelihood);
  EXPECT_TRUE(r.converged);
  EXPECT_GE(process_fidelity(r.channel, truth), 1 - 1e-6);
  EXPECT_TRUE(is_completely_positive(r.channel, 1e-7).cp);
}

TEST(MlEstimate, AllHalfFrequenciesGiveFullContraction) {
  FrequencyTable t;
  for (Axis a : kAxes)
    for (int k = 0; k < 4; ++k) t.set(a, k, 0.5);
  const TestStateEnsemble ens = reference_ensemble();
  const EstimateReport r = ml_estimate(t.to_observations(), ens, MeasurementModel(0.988));
  EXPECT_GE(process_fidelity(r.channel, AffineChannel::full_contraction()), 1 - 1e-3);
}

TEST(MlEstimate, AlwaysCompletelyPositiveOnAdversarialData) {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> bit(0, 1);
  const TestStateEnsemble ens = reference_ensemble();
  for (int trial = 0; trial < 5; ++trial) {
    FrequencyTable t;
    for (Axis a : kAxes)
      for (int k = 0; k < 4; ++k) t.set(a, k, bit(rng));
    const EstimateReport r =
        ml_estimate(t.to_observations(), ens, MeasurementModel(0.988), {4, 20000, 1, false});
    EXPECT_TRUE(is_completely_positive(r.channel, 1e-7).cp);
    EXPECT_TRUE(std::isfinite(r.log_likelihood));
  }
}

TEST(MlEstimate, DeterministicForFixedSeed) {
  const TestStateEnsemble ens = reference_ensemble();
  const ObservationSet obs = testing::observations_from(testing::reference_rpd_d4());
  const MlOptions opts{3, 20000, 9, false};
  const EstimateReport a = ml_estimate(obs, ens, MeasurementModel(0.988), opts);
  const EstimateReport b = ml_estimate(obs, ens, MeasurementModel(0.988), opts);
  EXPECT_EQ(a.channel.max_abs_difference(b.channel), 0.0);
}

TEST(MlEstimate, LikelihoodDominatesRegularizedLinear) {
  std::mt19937_64 rng(35);
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  for (int trial = 0; trial < 100; ++trial) {
    const AffineChannel e = testing::random_cp_channel(rng);
    const ExperimentRecord rec = sample_counts(e, ens, model, {100, rng(), false});
    const ObservationSet obs = rec.observations();
    const EstimateReport lin = regularize(linear_inverse(
        data_matrix_from_frequencies(FrequencyTable::from_observations(obs)), ens, model));
    const EstimateReport ml = ml_estimate(obs, ens, model, {2, 20000, 0, false});
    EXPECT_GE(ml.log_likelihood, log_likelihood(lin.channel, obs, ens, model).value - 1e-9);
  }
}

TEST(MlEstimate, RequiresCompleteDesignUnlessAllowed) {
  ObservationSet obs = {{StateId::plus_x, Axis::x, 0.8, 1.0}};
  const TestStateEnsemble ens = TestStateEnsemble::ideal();
  EXPECT_THROW(ml_estimate(obs, ens, MeasurementModel(0.9)), IncompleteDataError);
  EXPECT_NO_THROW(ml_estimate(obs, ens, MeasurementModel(0.9), {1, 5000, 0, true}));
}

TEST(MlEstimate, UsesExtraStates) {
  const TestStateEnsemble ens = TestStateEnsemble::ideal();
  const MeasurementModel model(0.99);
  const AffineChannel truth = rotation_damping(0.7, Angle::degrees(30));
  ObservationSet obs = exact_record(truth, ens, model);
  for (Axis a : kAxes)
    obs.push_back({StateId::minus_x, a,
                   predict_plus(truth, *ens.state(StateId::minus_x), a, model), 1.0});
  const EstimateReport r = ml_estimate(obs, ens, model, {2, 50000, 0, false});
  EXPECT_GE(process_fidelity(r.channel, truth), 1 - 1e-6);
}

TEST(ConstrainedMl, ExactFamilyData) {
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  const FamilyEstimate pd =
      constrained_ml(exact_record(phase_damping(0.63), ens, model), ens, model,
                     Family::phase_damping);
  EXPECT_NEAR(pd.lambda, 0.63, 1e-3);
  EXPECT_FALSE(pd.angle.has_value());

  const FamilyEstimate rpd =
      constrained_ml(exact_record(rotated_phase_damping(0.5, Angle::degrees(42)), ens, model),
                     ens, model, Family::rotated_phase_damping);
  EXPECT_NEAR(rpd.lambda, 0.5, 1e-3);
  ASSERT_TRUE(rpd.angle.has_value());
  EXPECT_NEAR(rpd.angle->degrees(), 42.0, 0.1);

  const FamilyEstimate rd =
      constrained_ml(exact_record(rotation_damping(0.66, Angle::degrees(325)), ens, model), ens,
                     model, Family::rotation_damping);
  EXPECT_NEAR(rd.lambda, 0.66, 1e-3);
  EXPECT_NEAR(rd.angle->degrees(), 325.0, 0.1);
  EXPECT_LT(rd.channel().max_abs_difference(rotation_damping(0.66, Angle::degrees(325))), 1e-3);
}

TEST(ConstrainedMl, NestedInUnconstrained) {
  const TestStateEnsemble ens = reference_ensemble();
  const MeasurementModel model(testing::kReferenceEta);
  for (const DataMatrix& dm : {testing::reference_pd_d4(), testing::reference_rpd_d4()}) {
    const ObservationSet obs = testing::observations_from(dm);
    const EstimateReport ml = ml_estimate(obs, ens, model);
    for (Family f : {Family::phase_damping, Family::rotated_phase_damping,
                     Family::rotation_damping})
      EXPECT_LE(constrained_ml(obs, ens, model, f).log_likelihood, ml.log_likelihood + 1e-9);
  }
}

TEST(Family, NamesRoundTrip) {
  for (Family f : {Family::phase_damping, Family::rotated_phase_damping,
                   Family::rotation_damping})
    EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_EQ(family_name(Family::rotated_phase_damping), "rotated_pd");
  EXPECT_FALSE(parse_family("amplitude_damping").has_value());
  EXPECT_EQ(method_name(Method::linear_regularized), "linear-regularized");
}

TEST(LambdaBar, Examples) {
  EXPECT_EQ(lambda_bar(AffineChannel::identity()), 1.0);
  EXPECT_NEAR(lambda_bar(testing::reference_pd_e4()), 0.655, 1e-12);
  EXPECT_NEAR(lambda_bar(testing::reference_pd_e4_ml()), 0.60, 1e-12);
}

}  // namespace
}  // namespace channelscope
