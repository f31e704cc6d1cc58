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

#include "channelscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "channelscope/errors.hpp"

namespace channelscope {

char axis_name(Axis axis) { return "xyz"[index(axis)]; }

const Matrix2c& pauli(Axis axis) {
  static const Matrix2c kX = (Matrix2c() << 0, 1, 1, 0).finished();
  static const Matrix2c kY =
      (Matrix2c() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix2c kZ = (Matrix2c() << 1, 0, 0, -1).finished();
  switch (axis) {
    case Axis::x:
      return kX;
    case Axis::y:
      return kY;
    case Axis::z:
      break;
  }
  return kZ;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix2c trace_first(const Matrix4c& w) {
  Matrix2c out = Matrix2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int d = 0; d < 2; ++d) out(b, d) += w(2 * a + b, 2 * a + d);
  return out;
}

Matrix2c trace_second(const Matrix4c& w) {
  Matrix2c out = Matrix2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int b = 0; b < 2; ++b) out(a, c) += w(2 * a + b, 2 * c + b);
  return out;
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
  double off = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = p + 1; q < a.cols(); ++q) off += std::norm(a(p, q));
  return 2.0 * off;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& input) {
  const Eigen::Index n = input.rows();
  if (n == 0 || input.cols() != n)
    throw ContractError("hermitian_eigen: matrix must be square and non-empty");
  if (!input.allFinite())
    throw ContractError("hermitian_eigen: non-finite entry");
  const double scale = std::max(1.0, max_abs(input));
  if (max_abs(input - input.adjoint()) > 1e-10 * scale)
    throw ContractError("hermitian_eigen: matrix is not Hermitian");

  ComplexMatrix a = 0.5 * (input + input.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double frob2 = a.squaredNorm();

  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = off_diagonal_norm2(a);
    if (off <= 1e-32 * frob2 || off < 1e-300) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b < 1e-300) continue;
        // Phase the (p, q) entry real, then a real Jacobi rotation zeroes it.
        const Complex phase = std::conj(a(p, q)) / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * b, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);

        ComplexMatrix j = ComplexMatrix::Identity(n, n);
        j(p, p) = c;
        j(p, q) = s;
        j(q, p) = -s * phase;
        j(q, q) = c * phase;

        a = (j.adjoint() * a * j).eval();
        v = (v * j).eval();
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) a(k, k) = a(k, k).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return a(l, l).real() < a(r, r).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  return hermitian_eigen(a).values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double clip) {
  const HermitianEigen eig = hermitian_eigen(a);
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda < -clip)
      throw DomainError("psd_sqrt: matrix has eigenvalue " +
                        std::to_string(lambda) + " below -" +
                        std::to_string(clip));
    roots(k) = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

bool inverse_sqrt_2x2(const Matrix2c& s, Matrix2c& out) {
  const double tr = s(0, 0).real() + s(1, 1).real();
  const double det = (s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0)).real();
  if (!(tr > 0.0) || !(det > 1e-14 * tr * tr)) return false;
  const double sq = std::sqrt(det);
  const double t = std::sqrt(tr + 2.0 * sq);
  // sqrt(S) = (S + sqrt(det S) I) / t and det(sqrt(S)) = sqrt(det S).
  const Matrix2c root = (s + sq * Matrix2c::Identity()) / t;
  out(0, 0) = root(1, 1) / sq;
  out(1, 1) = root(0, 0) / sq;
  out(0, 1) = -root(0, 1) / sq;
  out(1, 0) = -root(1, 0) / sq;
  return out.allFinite();
}

}  // namespace channelscope
