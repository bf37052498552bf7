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

#include "psfilter/linalg.hpp"

namespace psfilter {

/// Unit-norm state vector.
class PureState {
 public:
  static constexpr double kNormTol = 1e-12;

  /// Validates ||v|| = 1 within kNormTol and finiteness.
  explicit PureState(CVector amplitudes);

  /// Rescales v to unit norm. Throws on a zero or non-finite vector.
  static PureState normalized(const CVector& v);

  const CVector& vec() const noexcept { return amps_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kEigenTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;

  /// Validates all invariants. The stored matrix is the Hermitian part of m.
  explicit DensityMatrix(const CMatrix& m);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Eigen::Index d);

  const CMatrix& mat() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  /// Tr[A rho]
  cplx expectation(const CMatrix& a) const { return (a * m_).trace(); }

 private:
  CMatrix m_;
};

}  // namespace psfilter
