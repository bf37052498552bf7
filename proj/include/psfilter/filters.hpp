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

#include "psfilter/state.hpp"
#include "psfilter/useful_subspace.hpp"

namespace psfilter {

/// POVM element F with 0 <= F <= 1 and a Kraus factor K with F = K^dagger K.
class Filter {
 public:
  static constexpr double kTol = 1e-10;

  Filter(CMatrix f, CMatrix k);

  /// K = Hermitian square root of F.
  static Filter from_povm_element(const CMatrix& f);
  static Filter from_kraus(const CMatrix& k);

  const CMatrix& F() const noexcept { return f_; }
  const CMatrix& K() const noexcept { return k_; }
  Eigen::Index dim() const noexcept { return f_.rows(); }

  /// Tr[F rho]
  double probability(const CMatrix& rho) const { return (f_ * rho).trace().real(); }

 private:
  CMatrix f_;
  CMatrix k_;
};

/// F = (t2 - 1) rho0 + 1.
Filter jal_filter(const DensityMatrix& rho0, double t2);
Filter jal_filter(const PureState& psi0, double t2);

/// Assembles F in the adapted basis (psi, rest of U, complement):
///   [[diag(P_ps, 1, ..., 1), C], [C^dagger, D]].
/// c_block is u x (d-u), d_block is (d-u) x (d-u).
Filter optimal_noiseless_filter(const UsefulSubspace& subspace, double p_ps, const CMatrix& c_block,
                                const CMatrix& d_block);

struct DiagonalFilterParams {
  double p_theta = 1.0;
  double B = 1.0;
  double D = 1.0;
};

/// F = (p - B)|psi><psi| + B Pi_u + D Pi_n with psi the first subspace vector.
Filter diagonal_family_filter(const UsefulSubspace& subspace, const DiagonalFilterParams& params);

struct QubitFilterParams {
  double a = 1.0;
  double b = 1.0;
  cplx gamma{1.0, 0.0};
  cplx beta{0.0, 0.0};
};

/// K = diag(a, b) W with W = [[gamma, -conj(beta)], [beta, conj(gamma)]], in the
/// basis (psi, psi_perp) given by `frame` (identity when empty).
Filter qubit_filter(const QubitFilterParams& params, const CMatrix& frame = CMatrix());

/// Postselection probability of qubit_filter on the depolarized probe, written in
/// the (psi, psi_perp) frame.
double qubit_filter_probability(const QubitFilterParams& params, double eps);

/// K = [[t, 0, b], [0, 1, 0], [0, 0, 0]] in the basis (psi, psi_perp, n).
Filter offdiag_qutrit_filter(double t, double b, const CMatrix& frame = CMatrix());

/// K = diag(t, 1, r) in the basis (psi, psi_perp, n).
Filter diag_qutrit_filter(double t, double r, const CMatrix& frame = CMatrix());

/// F = P_max 1.
Filter naive_filter(Eigen::Index d, double p_max);

}  // namespace psfilter
