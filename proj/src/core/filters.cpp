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

#include "psfilter/filters.hpp"

#include <cmath>

#include "psfilter/error.hpp"

namespace psfilter {

namespace {

void check_unit(double v, const char* what) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, ErrorCode::InvalidArgument,
          std::string(what) + " must lie in [0, 1]");
}

CMatrix in_frame(const CMatrix& m, const CMatrix& frame) {
  if (frame.size() == 0) return m;
  require(frame.rows() == m.rows() && frame.cols() == m.cols(), ErrorCode::DimensionMismatch,
          "filter frame dimension mismatch");
  return frame * m * frame.adjoint();
}

}  // namespace

Filter::Filter(CMatrix f, CMatrix k) : f_(std::move(f)), k_(std::move(k)) {
  require(f_.rows() > 0 && f_.rows() == f_.cols(), ErrorCode::DimensionMismatch,
          "Filter: F must be square");
  require(k_.rows() == f_.rows() && k_.cols() == f_.cols(), ErrorCode::DimensionMismatch,
          "Filter: K and F dimensions differ");
  require(f_.allFinite() && k_.allFinite(), ErrorCode::NonFinite, "Filter: non-finite entries");
  require(linalg::is_effect(f_, kTol), ErrorCode::InvalidFilter,
          "Filter: F must satisfy 0 <= F <= 1");
  require((k_.adjoint() * k_ - f_).cwiseAbs().maxCoeff() <= kTol, ErrorCode::InvalidFilter,
          "Filter: K^dagger K differs from F");
  f_ = linalg::hermitian_part(f_);
}

Filter Filter::from_povm_element(const CMatrix& f) {
  require(f.rows() > 0 && f.rows() == f.cols(), ErrorCode::DimensionMismatch,
          "Filter: F must be square");
  require(linalg::is_effect(f, kTol), ErrorCode::InvalidFilter,
          "Filter: F must satisfy 0 <= F <= 1");
  return Filter(f, linalg::sqrt_psd(f));
}

Filter Filter::from_kraus(const CMatrix& k) {
  return Filter(linalg::hermitian_part(k.adjoint() * k), k);
}

Filter jal_filter(const DensityMatrix& rho0, double t2) {
  check_unit(t2, "jal_filter: t2");
  const Eigen::Index d = rho0.dim();
  const CMatrix f = (t2 - 1.0) * rho0.mat() + CMatrix::Identity(d, d);
  return Filter::from_povm_element(f);
}

Filter jal_filter(const PureState& psi0, double t2) {
  check_unit(t2, "jal_filter: t2");
  const Eigen::Index d = psi0.dim();
  const CMatrix proj = psi0.projector();
  const CMatrix f = (t2 - 1.0) * proj + CMatrix::Identity(d, d);
  // Exact root for a pure reference state: sqrt is t on psi0 and 1 elsewhere.
  const CMatrix k = (std::sqrt(t2) - 1.0) * proj + CMatrix::Identity(d, d);
  return Filter(f, k);
}

Filter optimal_noiseless_filter(const UsefulSubspace& subspace, double p_ps, const CMatrix& c_block,
                                const CMatrix& d_block) {
  require(std::isfinite(p_ps) && p_ps > 0.0 && p_ps <= 1.0, ErrorCode::InvalidArgument,
          "optimal_noiseless_filter: P_ps must lie in (0, 1]");
  const Eigen::Index d = subspace.dim();
  const Eigen::Index u = subspace.u;
  const Eigen::Index n = d - u;
  require(c_block.rows() == u && c_block.cols() == n, ErrorCode::DimensionMismatch,
          "optimal_noiseless_filter: C block must be u x (d-u)");
  require(d_block.rows() == n && d_block.cols() == n, ErrorCode::DimensionMismatch,
          "optimal_noiseless_filter: D block must be (d-u) x (d-u)");
  CMatrix fa = CMatrix::Zero(d, d);
  fa.topLeftCorner(u, u) = CMatrix::Identity(u, u);
  fa(0, 0) = p_ps;
  if (n > 0) {
    fa.topRightCorner(u, n) = c_block;
    fa.bottomLeftCorner(n, u) = c_block.adjoint();
    fa.bottomRightCorner(n, n) = d_block;
  }
  require(linalg::is_hermitian(fa, 1e-10), ErrorCode::InvalidFilter,
          "optimal_noiseless_filter: D block is not Hermitian");
  require(linalg::is_effect(fa, Filter::kTol), ErrorCode::InvalidFilter,
          "optimal_noiseless_filter: blocks give F outside [0, 1]");
  const CMatrix w = subspace.adapted_basis();
  return Filter::from_povm_element(linalg::hermitian_part(w * fa * w.adjoint()));
}

Filter diagonal_family_filter(const UsefulSubspace& subspace, const DiagonalFilterParams& params) {
  check_unit(params.p_theta, "diagonal_family_filter: p_theta");
  check_unit(params.B, "diagonal_family_filter: B");
  check_unit(params.D, "diagonal_family_filter: D");
  const CVector psi = subspace.psi();
  const CMatrix proj = psi * psi.adjoint();
  const CMatrix f = (params.p_theta - params.B) * proj + params.B * subspace.pi_u +
                    params.D * subspace.pi_n;
  // Commuting projectors, so the root is taken eigenvalue by eigenvalue.
  const CMatrix k = (std::sqrt(params.p_theta) - std::sqrt(params.B)) * proj +
                    std::sqrt(params.B) * subspace.pi_u + std::sqrt(params.D) * subspace.pi_n;
  return Filter(linalg::hermitian_part(f), linalg::hermitian_part(k));
}

Filter qubit_filter(const QubitFilterParams& params, const CMatrix& frame) {
  check_unit(params.a, "qubit_filter: a");
  check_unit(params.b, "qubit_filter: b");
  const double norm = std::norm(params.gamma) + std::norm(params.beta);
  require(std::abs(norm - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "qubit_filter: |gamma|^2 + |beta|^2 must equal 1");
  CMatrix w(2, 2);
  w << params.gamma, -std::conj(params.beta), params.beta, std::conj(params.gamma);
  CMatrix dm = CMatrix::Zero(2, 2);
  dm(0, 0) = params.a;
  dm(1, 1) = params.b;
  CMatrix k = dm * w;
  if (frame.size() != 0) k = in_frame(k, frame);
  return Filter::from_kraus(k);
}

double qubit_filter_probability(const QubitFilterParams& p, double eps) {
  const double a2 = p.a * p.a;
  const double b2 = p.b * p.b;
  return 0.5 * ((a2 + b2) * eps + 2.0 * (1.0 - eps) * (a2 * std::norm(p.gamma) + b2 * std::norm(p.beta)));
}

Filter offdiag_qutrit_filter(double t, double b, const CMatrix& frame) {
  check_unit(t, "offdiag_qutrit_filter: t");
  require(std::isfinite(b) && b >= 0.0 && b <= std::sqrt(std::max(0.0, 1.0 - t * t)) + 1e-12,
          ErrorCode::InvalidFilter, "offdiag_qutrit_filter: b must lie in [0, sqrt(1 - t^2)]");
  CMatrix k = CMatrix::Zero(3, 3);
  k(0, 0) = t;
  k(0, 2) = b;
  k(1, 1) = 1.0;
  return Filter::from_kraus(in_frame(k, frame));
}

Filter diag_qutrit_filter(double t, double r, const CMatrix& frame) {
  check_unit(t, "diag_qutrit_filter: t");
  check_unit(r, "diag_qutrit_filter: r");
  CMatrix k = CMatrix::Zero(3, 3);
  k(0, 0) = t;
  k(1, 1) = 1.0;
  k(2, 2) = r;
  return Filter::from_kraus(in_frame(k, frame));
}

Filter naive_filter(Eigen::Index d, double p_max) {
  require(d > 0, ErrorCode::InvalidArgument, "naive_filter: dimension must be positive");
  check_unit(p_max, "naive_filter: P_max");
  return Filter(p_max * CMatrix::Identity(d, d), std::sqrt(p_max) * CMatrix::Identity(d, d));
}

}  // namespace psfilter
