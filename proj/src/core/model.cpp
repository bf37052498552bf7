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

#include "psfilter/model.hpp"

#include <cmath>
#include <string>

#include "psfilter/error.hpp"

namespace psfilter {

ParameterizedModel::ParameterizedModel(PureState psi0, std::vector<CMatrix> generators)
    : psi0_(std::move(psi0)), gens_(std::move(generators)) {
  require(!gens_.empty(), ErrorCode::InvalidArgument, "model: at least one generator required");
  const Eigen::Index d = psi0_.dim();
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    const CMatrix& g = gens_[k];
    require(g.rows() == d && g.cols() == d, ErrorCode::DimensionMismatch,
            "model: generator " + std::to_string(k) + " does not match the state dimension");
    require(g.allFinite(), ErrorCode::NonFinite,
            "model: generator " + std::to_string(k) + " has non-finite entries");
    require(linalg::is_hermitian(g), ErrorCode::InvalidArgument,
            "model: generator " + std::to_string(k) + " is not Hermitian");
    gens_[k] = linalg::hermitian_part(g);
  }
}

void ParameterizedModel::check_theta(const RVector& theta) const {
  require(theta.size() == num_params(), ErrorCode::DimensionMismatch,
          "model: theta has length " + std::to_string(theta.size()) + ", expected " +
              std::to_string(num_params()));
  require(theta.allFinite(), ErrorCode::NonFinite, "model: theta is not finite");
}

CMatrix ParameterizedModel::hamiltonian(const RVector& theta) const {
  check_theta(theta);
  CMatrix h = CMatrix::Zero(dim(), dim());
  for (int k = 0; k < num_params(); ++k) h += theta(k) * gens_[static_cast<std::size_t>(k)];
  return h;
}

CMatrix ParameterizedModel::unitary(const RVector& theta) const {
  return linalg::expm_minus_i(hamiltonian(theta));
}

PureState evolve(const ParameterizedModel& model, const RVector& theta) {
  return PureState::normalized(model.unitary(theta) * model.psi0().vec());
}

namespace {

CVector align_phase(const CVector& ref, const CVector& v) {
  const cplx ov = ref.dot(v);  // <ref|v>
  if (std::abs(ov) == 0.0) return v;
  return v * (std::conj(ov) / std::abs(ov));
}

}  // namespace

CVector derivative_state(const ParameterizedModel& model, const RVector& theta, int j,
                         const DerivativeOptions& opts) {
  require(j >= 0 && j < model.num_params(), ErrorCode::InvalidArgument,
          "derivative_state: parameter index out of range");
  CVector out;
  if (opts.mode == DerivativeMode::Analytic) {
    const CMatrix du = linalg::expm_minus_i_derivative(model.hamiltonian(theta), model.generator(j));
    out = du * model.psi0().vec();
  } else {
    require(opts.h > 0.0 && std::isfinite(opts.h), ErrorCode::InvalidArgument,
            "derivative_state: step h must be positive");
    RVector tp = theta;
    RVector tm = theta;
    tp(j) += opts.h;
    tm(j) -= opts.h;
    CVector plus = evolve(model, tp).vec();
    CVector minus = evolve(model, tm).vec();
    if (opts.gauge == PhaseGauge::Aligned) {
      const CVector centre = evolve(model, theta).vec();
      plus = align_phase(centre, plus);
      minus = align_phase(centre, minus);
    }
    out = (plus - minus) / (2.0 * opts.h);
  }
  require(out.allFinite(), ErrorCode::NonFinite, "derivative_state: non-finite result");
  return out;
}

std::vector<CVector> derivative_states(const ParameterizedModel& model, const RVector& theta,
                                       const DerivativeOptions& opts) {
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(model.num_params()));
  for (int j = 0; j < model.num_params(); ++j) out.push_back(derivative_state(model, theta, j, opts));
  return out;
}

DerivativeDecomposition decompose_derivative(const PureState& psi, const CVector& dpsi) {
  require(dpsi.size() == psi.dim(), ErrorCode::DimensionMismatch,
          "decompose_derivative: dimension mismatch");
  require(dpsi.allFinite(), ErrorCode::NonFinite, "decompose_derivative: non-finite input");
  DerivativeDecomposition out;
  const cplx ov = psi.vec().dot(dpsi);
  out.x = ov.imag();
  out.parallel_real = ov.real();
  const CVector rest = dpsi - ov * psi.vec();
  const double n = rest.norm();
  if (n < 1e-14) {
    out.null_perp = true;
    out.perp = CVector::Zero(psi.dim());
    out.alpha = 0.0;
  } else {
    out.perp = rest / n;
    out.alpha = n;
  }
  return out;
}

}  // namespace psfilter
