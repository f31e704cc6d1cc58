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

#ifndef CHANNELSCOPE_QCHANNEL_HPP_
#define CHANNELSCOPE_QCHANNEL_HPP_

#include <numbers>
#include <string>

#include "channelscope/errors.hpp"
#include "channelscope/linalg.hpp"

namespace channelscope {

inline constexpr double kStateTolerance = 1e-9;
inline constexpr double kCpTolerance = 1e-9;

// Plane angle. Radians internally; degrees exist for I/O only.
class Angle {
 public:
  constexpr Angle() = default;
  static constexpr Angle radians(double value) { return Angle(value); }
  static constexpr Angle degrees(double value) {
    return Angle(value * std::numbers::pi / 180.0);
  }
  constexpr double radians() const { return radians_; }
  constexpr double degrees() const { return radians_ * 180.0 / std::numbers::pi; }

 private:
  constexpr explicit Angle(double value) : radians_(value) {}
  double radians_ = 0.0;
};

// Qubit state in Pauli coordinates, rho = (I + r.sigma) / 2.
class BlochVector {
 public:
  BlochVector() = default;
  BlochVector(double x, double y, double z) : r_(x, y, z) {}
  explicit BlochVector(const Vector3& r) : r_(r) {}

  double x() const { return r_.x(); }
  double y() const { return r_.y(); }
  double z() const { return r_.z(); }
  double operator[](Axis axis) const { return r_(index(axis)); }
  const Vector3& components() const { return r_; }
  double norm() const { return r_.norm(); }

  bool is_physical(double eps = kStateTolerance) const {
    return r_.allFinite() && r_.norm() <= 1.0 + eps;
  }

  Matrix2c density_matrix() const;
  static BlochVector from_density_matrix(const Matrix2c& rho);

 private:
  Vector3 r_ = Vector3::Zero();
};

// Trace-preserving qubit map r -> M r + v.
class AffineChannel {
 public:
  AffineChannel() : m_(Matrix3::Identity()), v_(Vector3::Zero()) {}
  // Throws ContractError on non-finite entries.
  AffineChannel(const Matrix3& m, const Vector3& v);

  static AffineChannel identity() { return AffineChannel(); }
  // A0: every input goes to the maximally mixed state.
  static AffineChannel full_contraction() {
    return AffineChannel(Matrix3::Zero(), Vector3::Zero());
  }

  const Matrix3& matrix() const { return m_; }
  const Vector3& translation() const { return v_; }

  BlochVector apply(const BlochVector& r) const {
    return BlochVector(m_ * r.components() + v_);
  }
  Matrix2c apply(const Matrix2c& rho) const;

  bool is_unital() const { return v_.isZero(0.0); }

  // 4x4 real matrix [[1, 0], [v, M]] acting on (1, r).
  Eigen::Matrix4d augmented() const;

  double max_abs_difference(const AffineChannel& other) const;

 private:
  Matrix3 m_;
  Vector3 v_;
};

// Unit-trace Choi state w = (E (x) I)[Psi+], output on the first factor.
class ChoiMatrix {
 public:
  // Validates Hermiticity (1e-12) and unit trace (1e-12); throws
  // ContractError otherwise. The stored matrix is exactly Hermitian.
  explicit ChoiMatrix(const Matrix4c& w);

  const Matrix4c& matrix() const { return w_; }

  // Partial trace over the output factor; I/2 for trace-preserving maps.
  Matrix2c input_marginal() const { return trace_first(w_); }
  // max-norm distance of the input marginal from I/2.
  double tp_defect() const;

  Eigen::Vector4d eigenvalues() const;

 private:
  Matrix4c w_;
};

// Projector onto |psi+> = (|00> + |11>)/sqrt(2).
const Matrix4c& maximally_entangled_projector();

// diag(lambda, lambda, 1), |lambda| <= 1.
AffineChannel phase_damping(double lambda);

// Phase damping in the plane spanned by (1,0,0) and (0, cos t, sin t);
// 0 <= lambda <= 1.
AffineChannel rotated_phase_damping(double lambda, Angle theta);

// Phase damping followed by a rotation by alpha about z; |lambda| <= 1.
AffineChannel rotation_damping(double lambda, Angle alpha);

// c E + (1 - c) A0, 0 <= c <= 1.
AffineChannel mix_with_white_noise(const AffineChannel& channel, double c);

ChoiMatrix affine_to_choi(const AffineChannel& channel);

// Throws ContractError when the input is not trace preserving within 1e-6.
AffineChannel choi_to_affine(const ChoiMatrix& choi);

struct CpReport {
  double min_eigenvalue = 0.0;
  bool cp = true;
};

class NotCompletelyPositiveError : public DomainError {
 public:
  NotCompletelyPositiveError(const std::string& what, CpReport report)
      : DomainError(what), report_(report) {}
  const CpReport& report() const { return report_; }

 private:
  CpReport report_;
};

CpReport is_completely_positive(const AffineChannel& channel,
                                double tol = kCpTolerance);

// Largest c in [0, 1] for which mix_with_white_noise(channel, c) is CP
// within 1e-9; bisection to 1e-6.
double max_cp_mixing(const AffineChannel& channel);

}  // namespace channelscope

#endif  // CHANNELSCOPE_QCHANNEL_HPP_
