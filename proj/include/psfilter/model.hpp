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

/// theta -> exp(-i sum_k theta_k G_k) psi0. Parameter indices are 0-based.
class ParameterizedModel {
 public:
  ParameterizedModel(PureState psi0, std::vector<CMatrix> generators);

  Eigen::Index dim() const noexcept { return psi0_.dim(); }
  int num_params() const noexcept { return static_cast<int>(gens_.size()); }
  const PureState& psi0() const noexcept { return psi0_; }
  const std::vector<CMatrix>& generators() const noexcept { return gens_; }
  const CMatrix& generator(int k) const { return gens_.at(static_cast<std::size_t>(k)); }

  /// sum_k theta_k G_k
  CMatrix hamiltonian(const RVector& theta) const;
  CMatrix unitary(const RVector& theta) const;

 private:
  void check_theta(const RVector& theta) const;

  PureState psi0_;
  std::vector<CMatrix> gens_;
};

PureState evolve(const ParameterizedModel& model, const RVector& theta);

enum class DerivativeMode { Analytic, CentralDifference };

/// Phase convention for central differences. Aligned rotates psi(theta +- h e_j)
/// so that its overlap with psi(theta) is real and positive before differencing.
enum class PhaseGauge { Aligned, Raw };

struct DerivativeOptions {
  DerivativeMode mode = DerivativeMode::Analytic;
  double h = 1e-5;
  PhaseGauge gauge = PhaseGauge::Aligned;
};

/// |d_j psi_theta>. The analytic mode is exact for non-commuting generators.
CVector derivative_state(const ParameterizedModel& model, const RVector& theta, int j,
                         const DerivativeOptions& opts = {});

std::vector<CVector> derivative_states(const ParameterizedModel& model, const RVector& theta,
                                       const DerivativeOptions& opts = {});

/// |d psi> = i x |psi> + alpha |perp>.
struct DerivativeDecomposition {
  double x = 0.0;
  cplx alpha{0.0, 0.0};
  CVector perp;  // unit norm, orthogonal to psi; zero vector when null_perp
  bool null_perp = false;
  /// Component Re<psi|dpsi>, kept so callers can check it vanishes.
  double parallel_real = 0.0;
};

DerivativeDecomposition decompose_derivative(const PureState& psi, const CVector& dpsi);

}  // namespace psfilter
