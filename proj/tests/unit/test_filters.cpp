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

#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "psfilter/analysis.hpp"
#include "psfilter/channels.hpp"
#include "psfilter/filters.hpp"
#include "psfilter/fisher.hpp"
#include "psfilter/optimize.hpp"
#include "psfilter/random.hpp"
#include "psfilter/useful_subspace.hpp"

using namespace psfilter;
using namespace testing;
using doctest::Approx;

namespace {

void check_valid(const Filter& f) {
  const RVector ev = linalg::eigenvalues_hermitian(f.F());
  CHECK(ev.minCoeff() >= -1e-10);
  CHECK(ev.maxCoeff() <= 1.0 + 1e-10);
  CHECK((f.K().adjoint() * f.K() - f.F()).cwiseAbs().maxCoeff() <= 1e-10);
}

struct Instance {
  ParameterizedModel model;
  RVector theta;
  PureState psi;
  std::vector<CVector> dpsis;
  UsefulSubspace sub;
};

Instance make_instance(random::Rng& rng, int d, int m) {
  ParameterizedModel model = random::model(rng, d, m);
  RVector th = random::real_vector(rng, m, -1.0, 1.0);
  PureState psi = evolve(model, th);
  std::vector<CVector> dpsis = derivative_states(model, th);
  UsefulSubspace sub = useful_subspace(psi, dpsis);
  return {std::move(model), std::move(th), std::move(psi), std::move(dpsis), std::move(sub)};
}

/// Smallest generalized eigenvalue of (after, before).
double min_directional_amplification(const QFIMatrix& after, const QFIMatrix& before) {
  Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> es(after, before);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("Filter validation") {
  CHECK(error_of([] { Filter::from_povm_element(2.0 * CMatrix::Identity(2, 2)); }) == ErrorCode::InvalidFilter);
  CHECK(error_of([] { Filter::from_povm_element(-0.1 * CMatrix::Identity(2, 2)); }) == ErrorCode::InvalidFilter);
  CHECK(error_of([] { Filter::from_povm_element(CMatrix::Identity(2, 3)); }) == ErrorCode::DimensionMismatch);
  CHECK(error_of([] { Filter f(CMatrix::Identity(2, 2), 0.5 * CMatrix::Identity(2, 2)); }) == ErrorCode::InvalidFilter);
  CHECK(error_of([] { Filter::from_kraus(2.0 * CMatrix::Identity(2, 2)); }) == ErrorCode::InvalidFilter);
  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  CHECK(error_of([&] { Filter f(nan, nan); }) == ErrorCode::NonFinite);
}

TEST_CASE("jal_filter") {
  const PureState psi(basis(3, 0));
  CHECK((jal_filter(psi, 1.0).F() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((jal_filter(psi, 0.0).F() - (CMatrix::Identity(3, 3) - psi.projector())).cwiseAbs().maxCoeff() < 1e-15);
  const RVector ev = linalg::eigenvalues_hermitian(jal_filter(psi, 0.25).F());
  CHECK(ev(0) == Approx(0.25));
  CHECK(ev(1) == Approx(1.0));
  CHECK(ev(2) == Approx(1.0));
  CHECK(error_of([&] { jal_filter(psi, 1.2); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { jal_filter(psi, -0.2); }) == ErrorCode::InvalidArgument);

  // Density-matrix overload: Hermitian square root.
  const Filter fd = jal_filter(DensityMatrix::from_pure(psi), 0.36);
  check_valid(fd);
  CHECK((fd.K() - jal_filter(psi, 0.36).K()).cwiseAbs().maxCoeff() < 1e-12);

  random::Rng rng = random::make_rng(31);
  for (int t = 0; t < 100; ++t) {
    const int d = random::uniform_int(rng, 2, 6);
    const Instance in = make_instance(rng, d, d - 1);
    REQUIRE(in.sub.u == d);
    const double t2 = random::uniform(rng);
    const Filter a = jal_filter(in.psi, t2);
    const Filter b = diagonal_family_filter(in.sub, {t2, 1.0, 1.0});
    CHECK((a.F() - b.F()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("optimal_noiseless_filter") {
  random::Rng rng = random::make_rng(32);
  const Instance in = make_instance(rng, 4, 1);
  REQUIRE(in.sub.u == 2);
  const CMatrix c0 = CMatrix::Zero(2, 2);

  const Filter jal_like = optimal_noiseless_filter(in.sub, 0.3, c0, CMatrix::Identity(2, 2));
  CHECK((jal_like.F() - jal_filter(in.psi, 0.3).F()).cwiseAbs().maxCoeff() < 1e-12);

  const Filter blocked = optimal_noiseless_filter(in.sub, 0.3, c0, CMatrix::Zero(2, 2));
  const CMatrix expect = (0.3 - 1.0) * in.psi.projector() + in.sub.pi_u;
  CHECK((blocked.F() - expect).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(error_of([&] { optimal_noiseless_filter(in.sub, 0.0, c0, c0); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { optimal_noiseless_filter(in.sub, 0.3, CMatrix::Zero(1, 2), c0); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(error_of([&] { optimal_noiseless_filter(in.sub, 0.3, c0, 2.0 * CMatrix::Identity(2, 2)); }) ==
        ErrorCode::InvalidFilter);
  // A coupling between a unit-eigenvalue direction of U and the complement pushes F above 1.
  CMatrix c_bad = CMatrix::Zero(2, 2);
  c_bad(1, 0) = 0.3;
  CHECK(error_of([&] { optimal_noiseless_filter(in.sub, 0.3, c_bad, 0.5 * CMatrix::Identity(2, 2)); }) ==
        ErrorCode::InvalidFilter);

  // Lossless at the design point for any admissible blocks.
  const QFIMatrix base = qfim_pure(in.psi.vec(), in.dpsis);
  for (int t = 0; t < 200; ++t) {
    const double p = random::uniform(rng, 0.05, 1.0);
    CMatrix cb, db;
    random::admissible_blocks(rng, 2, 4, p, cb, db);
    const Filter f = optimal_noiseless_filter(in.sub, p, cb, db);
    check_valid(f);
    CHECK(f.probability(in.psi.projector()) == Approx(p).epsilon(1e-12));
    const QFIMatrix q = qfim_pure_postselected(in.psi.vec(), in.dpsis, f.F());
    CHECK((q - base / p).cwiseAbs().maxCoeff() < 1e-8 * (1.0 + base.cwiseAbs().maxCoeff() / p));
  }
}

TEST_CASE("diagonal_family_filter") {
  random::Rng rng = random::make_rng(33);
  const Instance in5 = make_instance(rng, 5, 2);
  REQUIRE(in5.sub.u == 3);
  CHECK((diagonal_family_filter(in5.sub, {1.0, 1.0, 1.0}).F() - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);

  const Filter f = diagonal_family_filter(in5.sub, {0.2, 0.6, 0.9});
  const RVector ev = linalg::eigenvalues_hermitian(f.F());
  // Sorted ascending: 0.2, 0.6 (u - 1 = 2 times), 0.9 (d - u = 2 times).
  const double expect[] = {0.2, 0.6, 0.6, 0.9, 0.9};
  for (int k = 0; k < 5; ++k) CHECK(ev(k) == Approx(expect[k]).epsilon(1e-12));
  CHECK(f.probability(in5.psi.projector()) == Approx(0.2));

  // Post-processing family: p = t2 B, D = 0.
  const double t2 = 0.4, bval = 0.7;
  const Filter pp = diagonal_family_filter(in5.sub, {t2 * bval, bval, 0.0});
  CHECK((pp.F() * in5.sub.pi_n).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pp.probability(in5.psi.projector()) / bval == Approx(t2));

  CHECK(error_of([&] { diagonal_family_filter(in5.sub, {1.1, 1.0, 1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { diagonal_family_filter(in5.sub, {0.5, -0.1, 1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("qubit_filter") {
  for (cplx g : {cplx(1.0, 0.0), cplx(0.6, 0.0), cplx(0.0, 1.0)}) {
    const cplx be = std::sqrt(1.0 - std::norm(g));
    CHECK((qubit_filter({1.0, 1.0, g, be}).F() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  }
  const Filter diag = qubit_filter({0.5, 0.8, 1.0, 0.0});
  CHECK(diag.F()(0, 0).real() == Approx(0.25));
  CHECK(diag.F()(1, 1).real() == Approx(0.64));
  CHECK(std::abs(diag.F()(0, 1)) < 1e-15);
  CHECK(error_of([] { qubit_filter({0.5, 0.5, 1.0, 0.5}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { qubit_filter({1.5, 0.5, 1.0, 0.0}); }) == ErrorCode::InvalidArgument);

  // Closed-form probability against Tr[F rho] on (1 - eps)|0><0| + eps/2.
  random::Rng rng = random::make_rng(34);
  for (int t = 0; t < 1000; ++t) {
    const CVector gb = random::state(rng, 2).vec();
    const QubitFilterParams p{random::uniform(rng), random::uniform(rng), gb(0), gb(1)};
    const Filter f = qubit_filter(p);
    check_valid(f);
    const double eps = random::uniform(rng);
    const DensityMatrix rho = depolarize(DensityMatrix::from_pure(PureState(basis(2, 0))), eps);
    CHECK(qubit_filter_probability(p, eps) == Approx(f.probability(rho.mat())).epsilon(1e-12));
    // The singular-value frame W only rotates the output: F = W^dagger diag(a^2, b^2) W.
    CMatrix w(2, 2);
    w << p.gamma, -std::conj(p.beta), p.beta, std::conj(p.gamma);
    CMatrix d2 = CMatrix::Zero(2, 2);
    d2.diagonal() << p.a * p.a, p.b * p.b;
    CHECK((f.F() - w.adjoint() * d2 * w).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("offdiag and diagonal qutrit filters") {
  for (double t : {0.0, 0.3, 0.6, 1.0}) {
    const double bmax = std::sqrt(1.0 - t * t);
    for (double b : {0.0, 0.5 * bmax, bmax}) {
      const Filter f = offdiag_qutrit_filter(t, b);
      check_valid(f);
      const RVector ev = linalg::eigenvalues_hermitian(f.F());
      CHECK(std::abs(ev(0)) < 1e-12);
      CHECK(std::min(ev(1), ev(2)) == Approx(std::min(1.0, t * t + b * b)).epsilon(1e-12));
      CHECK(std::max(ev(1), ev(2)) == Approx(std::max(1.0, t * t + b * b)).epsilon(1e-12));
    }
    if (t < 1.0) CHECK(error_of([&] { offdiag_qutrit_filter(t, bmax + 1e-3); }) == ErrorCode::InvalidFilter);
  }
  // b = 0 coincides with the diagonal filter at r = 0.
  CHECK((offdiag_qutrit_filter(0.5, 0.0).F() - diag_qutrit_filter(0.5, 0.0).F()).cwiseAbs().maxCoeff() < 1e-15);

  // Displayed-state rates at t2 = 0.25, |alpha|^2 = 0.25: diagonal 3 t2 / (1 + 4 t2), off-diagonal
  // 12 * 0.25 * 1.75 * 0.25 / (1.75 + 6.25 * 0.25) with b^2 = 0.75.
  const double t = 0.5, bmax = std::sqrt(0.75);
  const double diag_rate = qutrit_info_rate(diag_qutrit_filter(t, 0.7), 0.25, QutritNoiseTerm::Displayed);
  const double off_rate = qutrit_info_rate(offdiag_qutrit_filter(t, bmax), 0.25, QutritNoiseTerm::Displayed);
  CHECK(diag_rate == Approx(0.375).epsilon(1e-12));
  CHECK(off_rate == Approx(1.3125 / 3.3125).epsilon(1e-12));
  CHECK(off_rate == Approx(0.396226).epsilon(1e-6));
  CHECK(off_rate > diag_rate);
  // Diagonal rate does not depend on r.
  for (double r : {0.0, 0.25, 1.0})
    CHECK(qutrit_info_rate(diag_qutrit_filter(t, r), 0.25, QutritNoiseTerm::Displayed) == Approx(0.375).epsilon(1e-12));
}

TEST_CASE("naive_filter") {
  CHECK((naive_filter(3, 1.0).F() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  random::Rng rng = random::make_rng(35);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = random::gaussian_matrix(rng, 4, 4);
    CMatrix r = a * a.adjoint();
    r /= r.trace().real();
    CHECK(naive_filter(4, 0.3).probability(r) == Approx(0.3).epsilon(1e-12));
  }
  CHECK(error_of([] { naive_filter(2, 1.5); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { naive_filter(0, 0.5); }) == ErrorCode::InvalidArgument);

  const NoiseGeometry g(0.5, 2, 2);
  CHECK(efficiency_noisy_closed(g, {0.2, 0.2, 0.2}) == Approx(0.2).epsilon(1e-12));
  CHECK(optimize_ds(g, 0.2).predicted_efficiency > 0.2);
}

TEST_CASE("uniqueness: perturbing the optimal form loses amplification") {
  random::Rng rng = random::make_rng(36);
  for (int d : {3, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Instance in = make_instance(rng, d, d - 1);
      const QFIMatrix base = qfim_pure(in.psi.vec(), in.dpsis);
      const double p = random::uniform(rng, 0.05, 0.95);
      const Filter opt = optimal_noiseless_filter(in.sub, p, CMatrix::Zero(d, 0), CMatrix::Zero(0, 0));
      CHECK(max_directional_amplification(qfim_pure_postselected(in.psi.vec(), in.dpsis, opt.F()), base) ==
            Approx(1.0 / p).epsilon(1e-8));

      // Mix with a random effect: F_u leaves the optimal form, so A < 1 / <psi|F|psi> strictly.
      const double eta = random::uniform(rng, 0.05, 0.5);
      const CMatrix fmix = (1.0 - eta) * opt.F() + eta * random::effect(rng, d);
      const double pm = (in.psi.vec().adjoint() * fmix * in.psi.vec())(0, 0).real();
      const double a = max_directional_amplification(qfim_pure_postselected(in.psi.vec(), in.dpsis, fmix), base);
      CHECK(a < (1.0 / pm) * (1.0 - 1e-6));

      // Lowering a single B_j below 1 at fixed P loses along some direction.
      CMatrix fa = CMatrix::Identity(d, d);
      fa(0, 0) = p;
      const int j = random::uniform_int(rng, 1, d - 1);
      fa(j, j) = random::uniform(rng, 0.2, 0.95);
      const CMatrix w = in.sub.adapted_basis();
      const CMatrix fb = w * fa * w.adjoint();
      CHECK(min_directional_amplification(qfim_pure_postselected(in.psi.vec(), in.dpsis, fb), base) <
            (1.0 / p) * (1.0 - 1e-6));
    }
  }
}

TEST_CASE("every constructor yields a valid filter") {
  random::Rng rng = random::make_rng(37);
  for (int t = 0; t < 1000; ++t) {
    const int d = random::uniform_int(rng, 2, 6);
    const Instance in = make_instance(rng, d, random::uniform_int(rng, 1, d - 1));
    check_valid(jal_filter(in.psi, random::uniform(rng)));
    check_valid(diagonal_family_filter(in.sub, {random::uniform(rng), random::uniform(rng), random::uniform(rng)}));
    check_valid(naive_filter(d, random::uniform(rng)));
    check_valid(Filter::from_povm_element(random::effect(rng, d)));
    CMatrix cb, db;
    const double p = random::uniform(rng, 0.01, 1.0);
    random::admissible_blocks(rng, in.sub.u, d, p, cb, db);
    check_valid(optimal_noiseless_filter(in.sub, p, cb, db));
    const double tt = random::uniform(rng);
    check_valid(offdiag_qutrit_filter(tt, random::uniform(rng) * std::sqrt(1.0 - tt * tt)));
    check_valid(diag_qutrit_filter(tt, random::uniform(rng)));
  }
}
