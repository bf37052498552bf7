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

#include "psfilter/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace psfilter::random {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CVector gaussian_vector(Rng& rng, Eigen::Index d) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = n(rng);
    const double im = n(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

CMatrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = n(rng);
      const double im = n(rng);
      m(r, c) = cplx(re, im);
    }
  }
  return m;
}

CMatrix hermitian(Rng& rng, Eigen::Index d) {
  const CMatrix g = gaussian_matrix(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

CMatrix unitary(Rng& rng, Eigen::Index d) {
  const CMatrix g = gaussian_matrix(rng, d, d);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    const cplx di = r(i, i);
    if (std::abs(di) > 0.0) q.col(i) *= di / std::abs(di);
  }
  return q;
}

PureState state(Rng& rng, Eigen::Index d) { return PureState::normalized(gaussian_vector(rng, d)); }

RVector real_vector(Rng& rng, Eigen::Index n, double lo, double hi) {
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

CMatrix effect(Rng& rng, Eigen::Index d) {
  const CMatrix u = unitary(rng, d);
  RVector spec(d);
  for (Eigen::Index i = 0; i < d; ++i) spec(i) = uniform(rng);
  const CMatrix f = u * spec.cast<cplx>().asDiagonal() * u.adjoint();
  return 0.5 * (f + f.adjoint());
}

std::vector<CMatrix> povm(Rng& rng, Eigen::Index d, int k) {
  std::vector<CMatrix> a;
  CMatrix s = CMatrix::Zero(d, d);
  for (int i = 0; i < k; ++i) {
    const CMatrix g = gaussian_matrix(rng, d, d);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  const CMatrix w = linalg::apply_hermitian(s, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<CMatrix> out;
  for (const CMatrix& ai : a) out.push_back(linalg::hermitian_part(w * ai * w));
  // Absorb rounding so the elements sum to the identity to machine precision.
  CMatrix total = CMatrix::Zero(d, d);
  for (const CMatrix& e : out) total += e;
  out.back() += CMatrix::Identity(d, d) - total;
  out.back() = linalg::hermitian_part(out.back());
  return out;
}

void admissible_blocks(Rng& rng, int u, int d, double p, CMatrix& c_block, CMatrix& d_block) {
  const int n = d - u;
  c_block = CMatrix::Zero(u, n);
  d_block = CMatrix::Zero(n, n);
  if (n == 0) return;
  // D spectrum in [0.25, 0.75]; by Weyl the assembled block stays in [0, 1]
  // while |c| is below the smallest margin.
  const CMatrix v = unitary(rng, n);
  RVector spec(n);
  for (int i = 0; i < n; ++i) spec(i) = uniform(rng, 0.25, 0.75);
  d_block = linalg::hermitian_part(v * spec.cast<cplx>().asDiagonal() * v.adjoint());
  const double margin = std::min({p, 1.0 - p, 0.25});
  const CVector dir = gaussian_vector(rng, n).normalized();
  c_block.row(0) = (0.9 * margin * uniform(rng)) * dir.transpose();
}

ParameterizedModel model(Rng& rng, Eigen::Index d, int m) {
  PureState psi0 = state(rng, d);
  std::vector<CMatrix> gens;
  for (int k = 0; k < m; ++k) gens.push_back(hermitian(rng, d));
  return ParameterizedModel(std::move(psi0), std::move(gens));
}

}  // namespace psfilter::random
