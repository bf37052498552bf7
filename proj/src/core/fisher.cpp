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

#include "psfilter/fisher.hpp"

#include <cmath>
#include <string>

#include "psfilter/error.hpp"

namespace psfilter {

namespace {

void check_hermitian_inputs(const CMatrix& rho, const std::vector<CMatrix>& drhos) {
  require(rho.rows() > 0 && rho.rows() == rho.cols(), ErrorCode::DimensionMismatch,
          "qfim: rho must be square");
  require(rho.allFinite(), ErrorCode::NonFinite, "qfim: non-finite rho");
  const double scale = std::max(1.0, linalg::max_abs(rho));
  require(linalg::hermitian_defect(rho) <= 1e-10 * scale, ErrorCode::InvalidArgument,
          "qfim: rho is not Hermitian");
  for (std::size_t j = 0; j < drhos.size(); ++j) {
    const CMatrix& dr = drhos[j];
    require(dr.rows() == rho.rows() && dr.cols() == rho.cols(), ErrorCode::DimensionMismatch,
            "qfim: derivative " + std::to_string(j) + " has the wrong shape");
    require(dr.allFinite(), ErrorCode::NonFinite, "qfim: non-finite derivative");
    const double ds = std::max(1.0, linalg::max_abs(dr));
    require(linalg::hermitian_defect(dr) <= 1e-10 * ds, ErrorCode::InvalidArgument,
            "qfim: derivative " + std::to_string(j) + " is not Hermitian");
  }
}

struct EigenPairs {
  RVector lam;
  CMatrix vecs;
  RMatrix inv_sum;  // 2 / (l_n + l_m) on retained pairs, 0 elsewhere
};

EigenPairs eigen_pairs(const CMatrix& rho, double eig_cutoff) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(rho));
  EigenPairs e{es.eigenvalues(), es.eigenvectors(), RMatrix()};
  const Eigen::Index d = rho.rows();
  const double lmax = e.lam.cwiseAbs().maxCoeff();
  const double floor = eig_cutoff * lmax;
  e.inv_sum = RMatrix::Zero(d, d);
  bool any = false;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      const double s = e.lam(n) + e.lam(m);
      if (lmax > 0.0 && s > floor) {
        e.inv_sum(n, m) = 2.0 / s;
        any = true;
      }
    }
  }
  require(any, ErrorCode::InvalidArgument, "qfim: every eigenvalue pair is below the cutoff");
  return e;
}

}  // namespace

QFIMatrix qfim_mixed(const CMatrix& rho, const std::vector<CMatrix>& drhos, double eig_cutoff) {
  check_hermitian_inputs(rho, drhos);
  const EigenPairs e = eigen_pairs(rho, eig_cutoff);
  const Eigen::Index m = static_cast<Eigen::Index>(drhos.size());
  std::vector<CMatrix> rot;
  rot.reserve(drhos.size());
  for (const CMatrix& dr : drhos) rot.push_back(e.vecs.adjoint() * dr * e.vecs);
  QFIMatrix out = QFIMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const CMatrix& a = rot[static_cast<std::size_t>(i)];
      const CMatrix& b = rot[static_cast<std::size_t>(j)];
      // sum_nm w_nm <n|d_j rho|m><m|d_i rho|n> = sum_nm w_nm b_nm a_mn
      const double v = (e.inv_sum.cast<cplx>().cwiseProduct(b).cwiseProduct(a.transpose()))
                           .sum()
                           .real();
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

QFIMatrix qfim_pure_postselected(const CVector& psi, const std::vector<CVector>& dpsis,
                                 const CMatrix& filter) {
  const Eigen::Index d = psi.size();
  require(filter.rows() == d && filter.cols() == d, ErrorCode::DimensionMismatch,
          "qfim_pure_postselected: filter dimension mismatch");
  require(linalg::is_effect(filter, 1e-10), ErrorCode::InvalidFilter,
          "qfim_pure_postselected: filter is not a POVM element");
  const double p = psi.dot(filter * psi).real();
  require(p > 1e-14, ErrorCode::DegeneratePostselection,
          "qfim_pure_postselected: postselection probability vanishes");
  const Eigen::Index m = static_cast<Eigen::Index>(dpsis.size());
  CMatrix dm(d, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    require(dpsis[static_cast<std::size_t>(j)].size() == d, ErrorCode::DimensionMismatch,
            "qfim_pure_postselected: derivative dimension mismatch");
    dm.col(j) = dpsis[static_cast<std::size_t>(j)];
  }
  const CMatrix g = dm.adjoint() * filter * dm;   // <d_i|F|d_j>
  const CVector f = dm.adjoint() * (filter * psi);  // <d_i|F|psi>
  const CMatrix q = g / p - (f * f.adjoint()) / (p * p);
  QFIMatrix out = 4.0 * q.real();
  return 0.5 * (out + out.transpose());
}

QFIMatrix qfim_pure(const CVector& psi, const std::vector<CVector>& dpsis) {
  return qfim_pure_postselected(psi, dpsis, CMatrix::Identity(psi.size(), psi.size()));
}

CMatrix sld(const CMatrix& rho, const CMatrix& drho, double eig_cutoff) {
  check_hermitian_inputs(rho, {drho});
  const EigenPairs e = eigen_pairs(rho, eig_cutoff);
  const CMatrix rot = e.vecs.adjoint() * drho * e.vecs;
  const CMatrix lam = e.inv_sum.cast<cplx>().cwiseProduct(rot);
  return linalg::hermitian_part(e.vecs * lam * e.vecs.adjoint());
}

double qfim_reduced(const CMatrix& rho_unnormalized, const CMatrix& drho_unnormalized,
                    double eig_cutoff) {
  const double p = rho_unnormalized.trace().real();
  require(p > 1e-14, ErrorCode::DegeneratePostselection, "qfim_reduced: trace vanishes");
  const double raw = qfim_mixed(rho_unnormalized, {drho_unnormalized}, eig_cutoff)(0, 0);
  const double dtr = drho_unnormalized.trace().real();
  return (raw - dtr * dtr / p) / p;
}

RMatrix classical_fim(const std::vector<CMatrix>& povm, const CMatrix& rho,
                      const std::vector<CMatrix>& drhos) {
  require(!povm.empty(), ErrorCode::InvalidArgument, "classical_fim: empty POVM");
  check_hermitian_inputs(rho, drhos);
  const Eigen::Index d = rho.rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (const CMatrix& e : povm) {
    require(e.rows() == d && e.cols() == d, ErrorCode::DimensionMismatch,
            "classical_fim: POVM element dimension mismatch");
    require(linalg::is_hermitian(e, 1e-10) && linalg::eigenvalues_hermitian(e).minCoeff() >= -1e-10,
            ErrorCode::InvalidFilter, "classical_fim: POVM element is not PSD");
    total += e;
  }
  require((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10, ErrorCode::InvalidFilter,
          "classical_fim: POVM elements do not sum to identity");
  const Eigen::Index m = static_cast<Eigen::Index>(drhos.size());
  RMatrix out = RMatrix::Zero(m, m);
  RVector dp(m);
  for (const CMatrix& e : povm) {
    const double p = (e * rho).trace().real();
    if (p <= 1e-14) continue;
    for (Eigen::Index j = 0; j < m; ++j) dp(j) = (e * drhos[static_cast<std::size_t>(j)]).trace().real();
    out += dp * dp.transpose() / p;
  }
  return out;
}

RMatrix crb(const QFIMatrix& qfim, int copies) {
  require(qfim.rows() > 0 && qfim.rows() == qfim.cols(), ErrorCode::DimensionMismatch,
          "crb: QFIM must be square");
  require(qfim.allFinite(), ErrorCode::NonFinite, "crb: non-finite QFIM");
  require(copies >= 1, ErrorCode::InvalidArgument, "crb: copies must be positive");
  const RMatrix sym = 0.5 * (qfim + qfim.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);
  const RVector& ev = es.eigenvalues();
  std::vector<Eigen::Index> null;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 1e-12) null.push_back(i);
  }
  if (!null.empty()) {
    RMatrix ns(sym.rows(), static_cast<Eigen::Index>(null.size()));
    for (std::size_t k = 0; k < null.size(); ++k) {
      ns.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(null[k]);
    }
    throw SingularFisherError("crb: QFIM is singular; some parameter combinations are not identifiable",
                              ns);
  }
  const RMatrix inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return inv / static_cast<double>(copies);
}

}  // namespace psfilter
