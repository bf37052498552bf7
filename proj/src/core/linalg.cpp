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

#include "psfilter/linalg.hpp"

#include <cmath>

#include "psfilter/error.hpp"

namespace psfilter::linalg {

double hermitian_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& a, double tol) {
  return a.rows() == a.cols() && hermitian_defect(a) <= tol;
}

bool all_finite(const CMatrix& a) { return a.allFinite(); }

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

RVector eigenvalues_hermitian(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMatrix apply_hermitian(const CMatrix& a, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  const CMatrix& v = es.eigenvectors();
  CVector fl(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) fl(i) = f(es.eigenvalues()(i));
  return v * fl.asDiagonal() * v.adjoint();
}

CMatrix sqrt_psd(const CMatrix& a) {
  return apply_hermitian(a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

CMatrix expm_minus_i(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  const CMatrix& v = es.eigenvectors();
  CVector phases(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    phases(i) = std::polar(1.0, -es.eigenvalues()(i));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

CMatrix expm_minus_i_derivative(const CMatrix& h, const CMatrix& dh) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  const CMatrix& v = es.eigenvectors();
  const RVector& lam = es.eigenvalues();
  CMatrix g = v.adjoint() * dh * v;
  const Eigen::Index n = h.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      // (e^{-ia} - e^{-ib})/(a - b) = -i e^{-i(a+b)/2} sinc((a-b)/2); stable at a == b.
      const double half = 0.5 * (lam(r) - lam(c));
      const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
      const cplx w = cplx(0.0, -1.0) * std::polar(1.0, -0.5 * (lam(r) + lam(c))) * sinc;
      g(r, c) *= w;
    }
  }
  return v * g * v.adjoint();
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_abs(const RMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_effect(const CMatrix& a, double tol) {
  if (!is_hermitian(a, std::max(tol, kHermitianTol))) return false;
  const RVector ev = eigenvalues_hermitian(a);
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

}  // namespace psfilter::linalg
