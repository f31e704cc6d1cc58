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

#include "channelscope/qchannel.hpp"

#include <cmath>
#include <sstream>

#include "channelscope/errors.hpp"

namespace channelscope {

namespace {

std::string format_value(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

void require_lambda(double lambda, double lower, const char* what) {
  if (!(lambda >= lower && lambda <= 1.0))
    throw DomainError(std::string(what) + ": damping parameter " +
                      format_value(lambda) +
                      (lower < 0.0 ? " violates the CP bound |lambda| <= 1"
                                   : " outside 0 <= lambda <= 1"));
}

}  // namespace

Matrix2c BlochVector::density_matrix() const {
  Matrix2c rho = 0.5 * Matrix2c::Identity();
  for (Axis axis : kAxes) rho += 0.5 * r_(index(axis)) * pauli(axis);
  return rho;
}

BlochVector BlochVector::from_density_matrix(const Matrix2c& rho) {
  Vector3 r;
  for (Axis axis : kAxes) r(index(axis)) = (pauli(axis) * rho).trace().real();
  return BlochVector(r);
}

AffineChannel::AffineChannel(const Matrix3& m, const Vector3& v) : m_(m), v_(v) {
  if (!m_.allFinite() || !v_.allFinite())
    throw ContractError("AffineChannel: non-finite matrix or translation entry");
}

Matrix2c AffineChannel::apply(const Matrix2c& x) const {
  // Linear extension to arbitrary operators: X = (tr X I + sum_k tr(s_k X) s_k)/2.
  const Complex trace = x.trace();
  Matrix2c out = 0.5 * trace * Matrix2c::Identity();
  for (Axis j : kAxes) {
    Complex coefficient = 0.5 * trace * v_(index(j));
    for (Axis k : kAxes)
      coefficient += 0.5 * m_(index(j), index(k)) * (pauli(k) * x).trace();
    out += coefficient * pauli(j);
  }
  return out;
}

Eigen::Matrix4d AffineChannel::augmented() const {
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  out(0, 0) = 1.0;
  out.block<3, 1>(1, 0) = v_;
  out.block<3, 3>(1, 1) = m_;
  return out;
}

double AffineChannel::max_abs_difference(const AffineChannel& other) const {
  return std::max((m_ - other.m_).cwiseAbs().maxCoeff(),
                  (v_ - other.v_).cwiseAbs().maxCoeff());
}

ChoiMatrix::ChoiMatrix(const Matrix4c& w) {
  if (!w.allFinite()) throw ContractError("ChoiMatrix: non-finite entry");
  const double asym = max_abs(w - w.adjoint());
  if (asym > 1e-12)
    throw ContractError("ChoiMatrix: not Hermitian (deviation " +
                        format_value(asym) + ")");
  const Complex trace = w.trace();
  if (std::abs(trace - 1.0) > 1e-12)
    throw ContractError("ChoiMatrix: trace " + format_value(trace.real()) +
                        " is not 1");
  w_ = 0.5 * (w + w.adjoint());
}

double ChoiMatrix::tp_defect() const {
  return max_abs(input_marginal() - 0.5 * Matrix2c::Identity());
}

Eigen::Vector4d ChoiMatrix::eigenvalues() const {
  return hermitian_eigenvalues(w_);
}

const Matrix4c& maximally_entangled_projector() {
  static const Matrix4c kPsiPlus = [] {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return Matrix4c(psi * psi.adjoint());
  }();
  return kPsiPlus;
}

AffineChannel phase_damping(double lambda) {
  require_lambda(lambda, -1.0, "phase_damping");
  Matrix3 m = Matrix3::Identity();
  m(0, 0) = m(1, 1) = lambda;
  return AffineChannel(m, Vector3::Zero());
}

AffineChannel rotated_phase_damping(double lambda, Angle theta) {
  require_lambda(lambda, 0.0, "rotated_phase_damping");
  const double c = std::cos(theta.radians());
  const double s = std::sin(theta.radians());
  Matrix3 m = Matrix3::Zero();
  m(0, 0) = lambda;
  m(1, 1) = lambda * c * c + s * s;
  m(1, 2) = m(2, 1) = (lambda - 1.0) * c * s;
  m(2, 2) = lambda * s * s + c * c;
  return AffineChannel(m, Vector3::Zero());
}

AffineChannel rotation_damping(double lambda, Angle alpha) {
  require_lambda(lambda, -1.0, "rotation_damping");
  const double c = std::cos(alpha.radians());
  const double s = std::sin(alpha.radians());
  Matrix3 m = Matrix3::Zero();
  m(0, 0) = lambda * c;
  m(0, 1) = lambda * s;
  m(1, 0) = -lambda * s;
  m(1, 1) = lambda * c;
  m(2, 2) = 1.0;
  return AffineChannel(m, Vector3::Zero());
}

AffineChannel mix_with_white_noise(const AffineChannel& channel, double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw DomainError("mix_with_white_noise: c = " + format_value(c) +
                      " outside [0, 1]");
  return AffineChannel(c * channel.matrix(), c * channel.translation());
}

ChoiMatrix affine_to_choi(const AffineChannel& channel) {
  // w = (E (x) I)[Psi+] = 1/2 sum_ab E[|a><b|] (x) |a><b|.
  Matrix4c w = Matrix4c::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Matrix2c unit = Matrix2c::Zero();
      unit(a, b) = 1.0;
      w += 0.5 * kron(channel.apply(unit), unit);
    }
  }
  return ChoiMatrix(w);
}

AffineChannel choi_to_affine(const ChoiMatrix& choi) {
  const double defect = choi.tp_defect();
  if (defect > 1e-6)
    throw ContractError("choi_to_affine: map is not trace preserving, "
                        "||Tr_out(w) - I/2|| = " + format_value(defect));
  const Matrix4c& w = choi.matrix();
  Matrix3 m;
  Vector3 v;
  for (Axis j : kAxes) {
    v(index(j)) = (kron(pauli(j), Matrix2c::Identity()) * w).trace().real();
    for (Axis k : kAxes)
      m(index(j), index(k)) =
          (kron(pauli(j), pauli(k).transpose()) * w).trace().real();
  }
  return AffineChannel(m, v);
}

CpReport is_completely_positive(const AffineChannel& channel, double tol) {
  const double min_eigenvalue = affine_to_choi(channel).eigenvalues()(0);
  return CpReport{min_eigenvalue, min_eigenvalue >= -tol};
}

double max_cp_mixing(const AffineChannel& channel) {
  if (is_completely_positive(channel).cp) return 1.0;
  double lo = 0.0;  // always CP
  double hi = 1.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (is_completely_positive(mix_with_white_noise(channel, mid)).cp)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace channelscope
