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

/// Real symmetric M x M Fisher information matrix.
using QFIMatrix = RMatrix;

inline constexpr double kDefaultEigCutoff = 1e-12;

/// Mixed-state QFIM in the eigenbasis of rho. Pairs with
/// lambda_n + lambda_m <= eig_cutoff * lambda_max are dropped.
QFIMatrix qfim_mixed(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                     double eig_cutoff = kDefaultEigCutoff);

/// 4 Re[<d_i psi|F|d_j psi>/P - <d_i psi|F|psi><psi|F|d_j psi>/P^2], P = <psi|F|psi>.
QFIMatrix qfim_pure_postselected(const CVector& psi, const std::vector<CVector>& dpsis,
                                 const CMatrix& filter);

/// Pure-state QFIM (F = identity).
QFIMatrix qfim_pure(const CVector& psi, const std::vector<CVector>& dpsis);

/// Symmetric logarithmic derivative for a single derivative direction.
CMatrix sld(const CMatrix& rho, const CMatrix& drho, double eig_cutoff = kDefaultEigCutoff);

/// Single-parameter QFI of rho'/Tr rho' computed from the unnormalized pair.
double qfim_reduced(const CMatrix& rho_unnormalized, const CMatrix& drho_unnormalized,
                    double eig_cutoff = kDefaultEigCutoff);

/// I_ij = sum_k d_i p_k d_j p_k / p_k over outcomes with p_k > 1e-14.
RMatrix classical_fim(const std::vector<CMatrix>& povm, const CMatrix& rho,
                      const std::vector<CMatrix>& drhos);

/// Inverse QFIM divided by the number of copies. Throws SingularFisherError with
/// the null-space basis when the smallest eigenvalue is at most 1e-12.
RMatrix crb(const QFIMatrix& qfim, int copies = 1);

}  // namespace psfilter
