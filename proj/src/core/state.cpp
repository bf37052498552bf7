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

#include "psfilter/state.hpp"

#include <cmath>
#include <sstream>

#include "psfilter/error.hpp"

namespace psfilter {

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  require(amps_.size() > 0, ErrorCode::InvalidArgument, "PureState: empty vector");
  require(amps_.allFinite(), ErrorCode::NonFinite, "PureState: non-finite amplitude");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "PureState: norm " << n << " differs from 1";
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

PureState PureState::normalized(const CVector& v) {
  require(v.size() > 0, ErrorCode::InvalidArgument, "PureState: empty vector");
  require(v.allFinite(), ErrorCode::NonFinite, "PureState: non-finite amplitude");
  const double n = v.norm();
  require(n > 0.0, ErrorCode::InvalidArgument, "PureState: zero vector");
  return PureState(v / n);
}

DensityMatrix::DensityMatrix(const CMatrix& m) {
  require(m.rows() > 0 && m.rows() == m.cols(), ErrorCode::DimensionMismatch,
          "DensityMatrix: matrix must be square and non-empty");
  require(m.allFinite(), ErrorCode::NonFinite, "DensityMatrix: non-finite entry");
  require(linalg::hermitian_defect(m) <= kHermitianTol, ErrorCode::InvalidArgument,
          "DensityMatrix: matrix is not Hermitian");
  m_ = linalg::hermitian_part(m);
  const double tr = m_.trace().real();
  require(std::abs(tr - 1.0) <= kTraceTol, ErrorCode::InvalidArgument,
          "DensityMatrix: trace differs from 1");
  require(linalg::eigenvalues_hermitian(m_).minCoeff() >= -kEigenTol, ErrorCode::InvalidArgument,
          "DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  require(d > 0, ErrorCode::InvalidArgument, "DensityMatrix: dimension must be positive");
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

}  // namespace psfilter
