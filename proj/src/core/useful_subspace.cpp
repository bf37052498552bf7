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

#include "psfilter/useful_subspace.hpp"

#include "psfilter/error.hpp"

namespace psfilter {

namespace {

// Orthonormal completion of the columns of q (assumed orthonormal).
CMatrix orthogonal_complement(const CMatrix& q) {
  const Eigen::Index d = q.rows();
  const Eigen::Index k = q.cols();
  if (k == d) return CMatrix(d, 0);
  CMatrix aug(d, k + d);
  aug << q, CMatrix::Identity(d, d);
  Eigen::HouseholderQR<CMatrix> qr(aug);
  CMatrix full = qr.householderQ() * CMatrix::Identity(d, d);
  CMatrix comp = full.rightCols(d - k);
  // Remove any residual overlap with q and re-orthonormalize.
  comp -= q * (q.adjoint() * comp);
  Eigen::HouseholderQR<CMatrix> qr2(comp);
  return qr2.householderQ() * CMatrix::Identity(d, d - k);
}

}  // namespace

CMatrix UsefulSubspace::adapted_basis() const {
  CMatrix w(dim(), dim());
  w << basis, complement;
  return w;
}

UsefulSubspace useful_subspace(const PureState& psi, const std::vector<CVector>& dpsis,
                               double rank_tol) {
  require(!dpsis.empty(), ErrorCode::InvalidArgument, "useful_subspace: no derivative vectors");
  require(rank_tol > 0.0, ErrorCode::InvalidArgument, "useful_subspace: rank_tol must be positive");
  const Eigen::Index d = psi.dim();
  const Eigen::Index m = static_cast<Eigen::Index>(dpsis.size());
  CMatrix all(d, m + 1);
  all.col(0) = psi.vec();
  for (Eigen::Index j = 0; j < m; ++j) {
    require(dpsis[static_cast<std::size_t>(j)].size() == d, ErrorCode::DimensionMismatch,
            "useful_subspace: derivative dimension mismatch");
    all.col(j + 1) = dpsis[static_cast<std::size_t>(j)];
  }
  const double smax = Eigen::JacobiSVD<CMatrix>(all).singularValues()(0);

  // Project the derivatives off psi, then keep the dominant left singular vectors.
  CMatrix perp = all.rightCols(m);
  perp -= psi.vec() * (psi.vec().adjoint() * perp);
  Eigen::JacobiSVD<CMatrix> svd(perp, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > rank_tol * smax) ++rank;
  }
  CMatrix basis(d, rank + 1);
  basis.col(0) = psi.vec();
  if (rank > 0) basis.rightCols(rank) = svd.matrixU().leftCols(rank);
  return subspace_from_basis(basis);
}

UsefulSubspace subspace_from_basis(const CMatrix& basis) {
  require(basis.cols() >= 1 && basis.cols() <= basis.rows(), ErrorCode::DimensionMismatch,
          "subspace_from_basis: need 1 <= u <= d columns");
  const CMatrix gram = basis.adjoint() * basis;
  require((gram - CMatrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() <= 1e-10,
          ErrorCode::InvalidArgument, "subspace_from_basis: columns are not orthonormal");
  UsefulSubspace s;
  s.u = static_cast<int>(basis.cols());
  s.basis = basis;
  s.complement = orthogonal_complement(basis);
  s.pi_u = linalg::hermitian_part(basis * basis.adjoint());
  const Eigen::Index d = basis.rows();
  s.pi_n = CMatrix::Identity(d, d) - s.pi_u;
  return s;
}

UsefulSubspace enlarge_subspace(const UsefulSubspace& s, const CMatrix& directions, int new_u) {
  require(new_u >= s.u && new_u <= s.dim(), ErrorCode::InvalidArgument,
          "enlarge_subspace: target dimension out of range");
  require(directions.rows() == s.dim(), ErrorCode::DimensionMismatch,
          "enlarge_subspace: direction dimension mismatch");
  CMatrix basis = s.basis;
  for (Eigen::Index c = 0; c < directions.cols() && basis.cols() < new_u; ++c) {
    CVector v = directions.col(c);
    v -= basis * (basis.adjoint() * v);
    v -= basis * (basis.adjoint() * v);
    const double n = v.norm();
    if (n < 1e-8) continue;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v / n;
  }
  require(basis.cols() == new_u, ErrorCode::InvalidArgument,
          "enlarge_subspace: not enough independent directions");
  return subspace_from_basis(basis);
}

}  // namespace psfilter
