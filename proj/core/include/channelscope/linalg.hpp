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

#ifndef CHANNELSCOPE_LINALG_HPP_
#define CHANNELSCOPE_LINALG_HPP_

#include <complex>

#include <Eigen/Dense>

namespace channelscope {

using Complex = std::complex<double>;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

// Dense square complex matrix. Only dimensions 2 and 4 occur in this library.
using ComplexMatrix = Eigen::MatrixXcd;

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr Axis kAxes[] = {Axis::x, Axis::y, Axis::z};

inline int index(Axis axis) { return static_cast<int>(axis); }
char axis_name(Axis axis);

// Pauli operator sigma_x, sigma_y or sigma_z.
const Matrix2c& pauli(Axis axis);

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

// Partial traces of a 4x4 operator on C^2 (x) C^2 with row index 2*a + b.
Matrix2c trace_first(const Matrix4c& w);
Matrix2c trace_second(const Matrix4c& w);

// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted ascending
// and the columns of `vectors` are the matching orthonormal eigenvectors.
struct HermitianEigen {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

// Cyclic complex Jacobi rotations. Throws ContractError for non-square,
// non-finite or non-Hermitian (beyond 1e-10 relative) input.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

// Square root of a positive semidefinite Hermitian matrix. Eigenvalues in
// [-clip, 0) are treated as rounding and set to zero; anything more negative
// throws DomainError.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, double clip = 1e-9);

// Inverse square root of a positive definite 2x2 Hermitian matrix, closed
// form. Returns false when the matrix is not safely positive definite.
bool inverse_sqrt_2x2(const Matrix2c& s, Matrix2c& out);

double max_abs(const ComplexMatrix& a);

}  // namespace channelscope

#endif  // CHANNELSCOPE_LINALG_HPP_
