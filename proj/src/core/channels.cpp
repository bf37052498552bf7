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

#include "psfilter/channels.hpp"

#include <cmath>

#include "psfilter/error.hpp"

namespace psfilter {

namespace {

void check_eps(double eps) {
  require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0, ErrorCode::InvalidArgument,
          "depolarize: eps must lie in [0, 1]");
}

void check_kraus(const CMatrix& k, Eigen::Index d) {
  require(k.rows() == d && k.cols() == d, ErrorCode::DimensionMismatch,
          "postselect: Kraus operator dimension mismatch");
  require(k.allFinite(), ErrorCode::NonFinite, "postselect: non-finite Kraus operator");
  require(linalg::is_effect(k.adjoint() * k, 1e-10), ErrorCode::InvalidFilter,
          "postselect: K^dagger K is not a valid POVM element");
}

CMatrix depolarize_raw(const CMatrix& rho, double eps) {
  const Eigen::Index d = rho.rows();
  return (1.0 - eps) * rho +
         (eps / static_cast<double>(d)) * rho.trace().real() * CMatrix::Identity(d, d);
}

}  // namespace

DensityMatrix depolarize(const DensityMatrix& rho, double eps) {
  check_eps(eps);
  return DensityMatrix(depolarize_raw(rho.mat(), eps));
}

Postselected postselect(const DensityMatrix& rho, const CMatrix& kraus) {
  check_kraus(kraus, rho.dim());
  const CMatrix out = kraus * rho.mat() * kraus.adjoint();
  const double p = out.trace().real();
  require(p >= kMinPostselectProb, ErrorCode::DegeneratePostselection,
          "postselect: postselection probability vanishes");
  return {DensityMatrix(linalg::hermitian_part(out / p)), std::min(p, 1.0)};
}

Postselected noise_before_ps_state(const ParameterizedModel& model, const RVector& theta,
                                   const CMatrix& kraus, double eps) {
  const DensityMatrix rho = DensityMatrix::from_pure(evolve(model, theta));
  return postselect(depolarize(rho, eps), kraus);
}

Postselected noise_after_ps_state(const ParameterizedModel& model, const RVector& theta,
                                  const CMatrix& kraus, double eps) {
  const DensityMatrix rho = DensityMatrix::from_pure(evolve(model, theta));
  Postselected ps = postselect(rho, kraus);
  return {depolarize(ps.state, eps), ps.prob};
}

StateDerivs pure_state_derivs(const PureState& psi, const std::vector<CVector>& dpsis) {
  StateDerivs s;
  s.rho = psi.projector();
  for (const CVector& dv : dpsis) {
    require(dv.size() == psi.dim(), ErrorCode::DimensionMismatch,
            "pure_state_derivs: derivative dimension mismatch");
    const CMatrix half = dv * psi.vec().adjoint();
    s.drho.push_back(half + half.adjoint());
  }
  s.dprob.assign(dpsis.size(), 0.0);
  return s;
}

StateDerivs depolarize(const StateDerivs& s, double eps) {
  check_eps(eps);
  StateDerivs out = s;
  out.rho = depolarize_raw(s.rho, eps);
  for (std::size_t j = 0; j < s.drho.size(); ++j) out.drho[j] = depolarize_raw(s.drho[j], eps);
  return out;
}

StateDerivs apply_kraus(const StateDerivs& s, const CMatrix& kraus) {
  check_kraus(kraus, s.dim());
  StateDerivs out = s;
  out.rho = linalg::hermitian_part(kraus * s.rho * kraus.adjoint());
  for (std::size_t j = 0; j < s.drho.size(); ++j) {
    out.drho[j] = linalg::hermitian_part(kraus * s.drho[j] * kraus.adjoint());
  }
  return out;
}

StateDerivs postselect(const StateDerivs& s, const CMatrix& kraus) {
  const double tr_in = s.rho.trace().real();
  StateDerivs raw = apply_kraus(s, kraus);
  const double p = raw.rho.trace().real();
  require(p >= kMinPostselectProb * tr_in, ErrorCode::DegeneratePostselection,
          "postselect: postselection probability vanishes");
  StateDerivs out;
  out.rho = raw.rho / p;
  out.prob = s.prob * p / tr_in;
  out.drho.resize(s.drho.size());
  out.dprob.resize(s.drho.size());
  for (std::size_t j = 0; j < s.drho.size(); ++j) {
    const double dp = raw.drho[j].trace().real();
    out.drho[j] = raw.drho[j] / p - (dp / (p * p)) * raw.rho;
    const double dprev = j < s.dprob.size() ? s.dprob[j] : 0.0;
    out.dprob[j] = dprev * p / tr_in + s.prob * dp / tr_in;
  }
  return out;
}

const char* to_string(NoiseOrder order) noexcept {
  switch (order) {
    case NoiseOrder::None: return "none";
    case NoiseOrder::Before: return "before";
    case NoiseOrder::After: return "after";
  }
  return "unknown";
}

StateDerivs prepare_state(const ParameterizedModel& model, const RVector& theta,
                          const CMatrix& kraus, double eps, NoiseOrder order,
                          const DerivativeOptions& opts) {
  check_eps(eps);
  const PureState psi = evolve(model, theta);
  StateDerivs s = pure_state_derivs(psi, derivative_states(model, theta, opts));
  const bool filtered = kraus.size() > 0;
  switch (order) {
    case NoiseOrder::None:
      if (filtered) s = postselect(s, kraus);
      break;
    case NoiseOrder::Before:
      s = depolarize(s, eps);
      if (filtered) s = postselect(s, kraus);
      break;
    case NoiseOrder::After:
      if (filtered) s = postselect(s, kraus);
      s = depolarize(s, eps);
      break;
  }
  return s;
}

}  // namespace psfilter
