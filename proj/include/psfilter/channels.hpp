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

#include "psfilter/model.hpp"
#include "psfilter/state.hpp"

namespace psfilter {

/// (1 - eps) rho + (eps / d) 1
DensityMatrix depolarize(const DensityMatrix& rho, double eps);

struct Postselected {
  DensityMatrix state;
  double prob;
};

/// Probabilities below this are treated as impossible postselection.
inline constexpr double kMinPostselectProb = 1e-14;

/// Keeps outcome F = K^dagger K. Validates 0 <= F <= 1 within 1e-10.
Postselected postselect(const DensityMatrix& rho, const CMatrix& kraus);

/// Depolarize rho_theta, then postselect.
Postselected noise_before_ps_state(const ParameterizedModel& model, const RVector& theta,
                                   const CMatrix& kraus, double eps);

/// Postselect rho_theta, then depolarize. prob is that of the noiseless input.
Postselected noise_after_ps_state(const ParameterizedModel& model, const RVector& theta,
                                  const CMatrix& kraus, double eps);

/// A state together with its parameter derivatives; rho need not be normalized.
struct StateDerivs {
  CMatrix rho;
  std::vector<CMatrix> drho;
  /// Accumulated postselection probability and its derivatives.
  double prob = 1.0;
  std::vector<double> dprob;

  Eigen::Index dim() const noexcept { return rho.rows(); }
  int num_params() const noexcept { return static_cast<int>(drho.size()); }
};

StateDerivs pure_state_derivs(const PureState& psi, const std::vector<CVector>& dpsis);

StateDerivs depolarize(const StateDerivs& s, double eps);

/// rho -> K rho K^dagger without normalization (prob fields untouched).
StateDerivs apply_kraus(const StateDerivs& s, const CMatrix& kraus);

/// Normalized postselection with the quotient rule for the derivatives.
StateDerivs postselect(const StateDerivs& s, const CMatrix& kraus);

enum class NoiseOrder { None, Before, After };

const char* to_string(NoiseOrder order) noexcept;

/// rho_theta and d_j rho_theta for the chosen channel ordering. An empty kraus
/// matrix means no filter.
StateDerivs prepare_state(const ParameterizedModel& model, const RVector& theta,
                          const CMatrix& kraus, double eps, NoiseOrder order,
                          const DerivativeOptions& opts = {});

}  // namespace psfilter
