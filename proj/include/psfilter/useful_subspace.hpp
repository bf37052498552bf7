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

#include <vector>

#include "psfilter/state.hpp"

namespace psfilter {

/// span{psi, d_1 psi, ..., d_M psi}. The first basis vector is psi itself.
struct UsefulSubspace {
  int u = 0;
  CMatrix basis;       // d x u, orthonormal columns, column 0 = psi
  CMatrix complement;  // d x (d-u), orthonormal columns spanning the orthogonal complement
  CMatrix pi_u;
  CMatrix pi_n;

  Eigen::Index dim() const noexcept { return basis.rows(); }
  CVector psi() const { return basis.col(0); }
  /// [basis | complement], a d x d unitary adapted to the subspace.
  CMatrix adapted_basis() const;
};

UsefulSubspace useful_subspace(const PureState& psi, const std::vector<CVector>& dpsis,
                               double rank_tol = 1e-10);

/// Builds the subspace from explicit orthonormal columns whose first column is psi.
UsefulSubspace subspace_from_basis(const CMatrix& basis);

/// Appends the given directions (orthogonalized against the current basis) so that
/// the subspace grows to dimension new_u. Directions are consumed in column order.
UsefulSubspace enlarge_subspace(const UsefulSubspace& s, const CMatrix& directions, int new_u);

}  // namespace psfilter
