// Copyright 2026 The psfilter Authors
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

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace psfilter {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace linalg {

inline constexpr double kHermitianTol = 1e-12;

/// max_ij |A_ij - conj(A_ji)|
double hermitian_defect(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol = kHermitianTol);

bool all_finite(const CMatrix& a);

/// (A + A^dagger) / 2
CMatrix hermitian_part(const CMatrix& a);

/// Real eigenvalues of a Hermitian matrix, ascending.
RVector eigenvalues_hermitian(const CMatrix& a);

/// f(A) = V f(Lambda) V^dagger for Hermitian A.
CMatrix apply_hermitian(const CMatrix& a, const std::function<double(double)>& f);

/// Principal square root of a PSD matrix; eigenvalues are clamped at zero.
CMatrix sqrt_psd(const CMatrix& a);

/// exp(-i A) for Hermitian A, via eigendecomposition.
CMatrix expm_minus_i(const CMatrix& a);

/// Directional derivative of exp(-i H) along the Hermitian direction dH,
/// using the divided-difference (Daleckii-Krein) formula in the eigenbasis of H.
CMatrix expm_minus_i_derivative(const CMatrix& h, const CMatrix& dh);

double max_abs(const CMatrix& a);
double max_abs(const RMatrix& a);

/// Rank-one |v><w|.
inline CMatrix outer(const CVector& v, const CVector& w) { return v * w.adjoint(); }

inline CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

/// Checks 0 <= A <= 1 in the Loewner order within tol.
bool is_effect(const CMatrix& a, double tol = 1e-10);

}  // namespace linalg
}  // namespace psfilter
