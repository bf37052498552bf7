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

#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "psfilter/analysis.hpp"
#include "psfilter/channels.hpp"
#include "psfilter/filters.hpp"
#include "psfilter/fisher.hpp"
#include "psfilter/random.hpp"
#include "psfilter/useful_subspace.hpp"

using namespace psfilter;
using namespace testing;
using doctest::Approx;

namespace {

/// Argmax of the closed-form D = 0 amplification, searched in log t2.
double argmax_t2(const NoiseGeometry& g) {
  const double lx = oracle::golden_max([&](double x) { return amplification_t_closed(g, std::exp(x)); }, -30.0, 10.0, 1e-14);
  return std::exp(lx);
}

double max_over_t(const NoiseGeometry& g, bool noiseless_baseline) {
  auto f = [&](double x) {
    return noiseless_baseline ? amplification_t_vs_noiseless(g, std::exp(x)) : amplification_t_closed(g, std::exp(x));
  };
  return f(oracle::golden_max(f, -30.0, 10.0, 1e-14));
}

struct FamilyCase {
  NoiseGeometry geom;
  DiagonalFilterParams params;
  AmplificationReport report;
};

/// Random model whose useful subspace is enlarged to u, filtered by the diagonal family.
FamilyCase random_family_case(random::Rng& rng, int d, int m, int u, double eps, const DiagonalFilterParams& p) {
  const ParameterizedModel model = random::model(rng, d, m);
  const RVector th = random::real_vector(rng, m, -1.0, 1.0);
  UsefulSubspace sub = useful_subspace(evolve(model, th), derivative_states(model, th));
  if (u > sub.u) sub = enlarge_subspace(sub, random::gaussian_matrix(rng, d, d), u);
  const Filter f = diagonal_family_filter(sub, p);
  const StateDerivs after = prepare_state(model, th, f.K(), eps, NoiseOrder::Before);
  const StateDerivs before = prepare_state(model, th, CMatrix(), eps, NoiseOrder::Before);
  const AmplificationReport r =
      amplification_numeric(qfim_mixed(after.rho, after.drho), qfim_mixed(before.rho, before.drho), after.prob, 1e-8);
  return {NoiseGeometry(eps, d, u), p, r};
}

}  // namespace

TEST_CASE("NoiseGeometry") {
  const NoiseGeometry g(0.5, 10, 5);
  CHECK(g.b() == Approx(0.55));
  CHECK(g.c() == Approx(0.2));
  CHECK(g.g() == Approx(0.05));
  CHECK(g.b() + g.c() == Approx(1.0 - 0.5 * (1.0 - 0.5)));
  CHECK(NoiseGeometry(0.5, 2, 2).noise_factor() == Approx(0.25));
  CHECK(error_of([] { NoiseGeometry g2(1.5, 2, 2); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { NoiseGeometry g2(0.5, 1, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { NoiseGeometry g2(0.5, 3, 4); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { NoiseGeometry g2(0.5, 3, 0); }) == ErrorCode::InvalidArgument);
  for (int d = 2; d <= 12; ++d)
    for (int u = 1; u <= d; ++u)
      for (double e : {0.0, 0.3, 1.0}) {
        const NoiseGeometry n(e, d, u);
        CHECK(n.b() + n.c() >= static_cast<double>(u) / d - 1e-15);
        CHECK(n.b() + n.c() <= 1.0 + 1e-15);
      }
}

TEST_CASE("amplification_numeric") {
  RMatrix q(2, 2);
  q << 2.0, 0.5, 0.5, 1.0;
  const AmplificationReport same = amplification_numeric(q, q);
  CHECK(same.uniform);
  CHECK(*same.amplification == Approx(1.0));
  const AmplificationReport four = amplification_numeric(4.0 * q, q, 0.25);
  CHECK(four.uniform);
  CHECK(*four.amplification == Approx(4.0));
  CHECK(*four.efficiency == Approx(1.0));

  RMatrix skew = q;
  skew(0, 0) *= 3.0;
  const AmplificationReport nu = amplification_numeric(skew, q);
  CHECK_FALSE(nu.uniform);
  CHECK_FALSE(nu.amplification.has_value());
  CHECK(nu.max_ratio == Approx(3.0));
  CHECK(nu.min_ratio == Approx(1.0));
  CHECK(error_of([&] { amplification_numeric(skew, q, 1.0, 1e-6, true); }) == ErrorCode::NonUniformAmplification);

  RMatrix zero_off = q;
  zero_off(0, 1) = zero_off(1, 0) = 0.0;
  CHECK(error_of([&] { amplification_numeric(q, zero_off); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { amplification_numeric(q, RMatrix::Zero(3, 3)); }) == ErrorCode::DimensionMismatch);

  // JAL, noiseless, design point.
  const ParameterizedModel m = qubit_y_model();
  const Filter jal = jal_filter(evolve(m, vec1(0.3)), 0.25);
  const StateDerivs a = prepare_state(m, vec1(0.3), jal.K(), 0.0, NoiseOrder::None);
  const StateDerivs b = prepare_state(m, vec1(0.3), CMatrix(), 0.0, NoiseOrder::None);
  const AmplificationReport r = amplification_numeric(qfim_mixed(a.rho, a.drho), qfim_mixed(b.rho, b.drho), a.prob);
  CHECK(*r.amplification == Approx(4.0).epsilon(1e-10));
  CHECK(*r.efficiency == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("diagonal-family closed forms") {
  CHECK(amplification_noisy_closed(NoiseGeometry(0.0, 4, 2), {0.2, 0.8, 0.5}) == Approx(4.0));
  CHECK(amplification_noisy_closed(NoiseGeometry(0.5, 2, 2), {1.0 / 3.0, 1.0, 0.0}) == Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(oracle::diagonal_family_amplification_direct(0.5, 2, 2, 1.0 / 3.0, 1.0, 0.0) == Approx(4.0 / 3.0).epsilon(1e-8));
  CHECK(efficiency_noisy_closed(NoiseGeometry(0.0, 3, 2), {1.0, 1.0, 1.0}) == Approx(1.0));
  CHECK(error_of([] { amplification_noisy_closed(NoiseGeometry(0.5, 2, 2), {0.5, 0.0, 0.0}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([] { efficiency_noisy_closed(NoiseGeometry(0.5, 2, 2), {0.5, 0.0, 0.0}); }) ==
        ErrorCode::InvalidArgument);

  random::Rng rng = random::make_rng(41);
  for (int t = 0; t < 200; ++t) {
    const int d = random::uniform_int(rng, 2, 8);
    const int u = random::uniform_int(rng, 2, d);
    const NoiseGeometry g(random::uniform(rng), d, u);
    const double p = random::uniform(rng, 0.01, 1.0), bv = random::uniform(rng, 0.01, 1.0);
    const double pm = random::uniform(rng);
    // Independent of D; naive family gives P_max.
    CHECK(efficiency_noisy_closed(g, {p, bv, 0.0}) == efficiency_noisy_closed(g, {p, bv, 1.0}));
    CHECK(efficiency_noisy_closed(g, {pm, pm, pm}) == Approx(pm).epsilon(1e-12));
    // D = 0 closed form equals the t2 parameterization.
    CHECK(amplification_noisy_closed(g, {p, bv, 0.0}) == Approx(amplification_t_closed(g, p / bv)).epsilon(1e-12));
    // Direct Lyapunov evaluation in the adapted basis.
    if (t < 40) {
      const double dv = random::uniform(rng);
      CHECK(oracle::diagonal_family_amplification_direct(g.eps, d, u, p, bv, dv) ==
            Approx(amplification_noisy_closed(g, {p, bv, dv})).epsilon(1e-7));
    }
  }
}

TEST_CASE("closed forms match the brute-force QFIM on random models") {
  random::Rng rng = random::make_rng(42);
  for (int t = 0; t < 200; ++t) {
    const int d = random::uniform_int(rng, 3, 10);
    const int m = random::uniform_int(rng, 1, std::min(3, d - 1));
    const int u = random::uniform_int(rng, m + 1, d);
    const double eps = random::uniform(rng, 0.0, 0.95);
    const DiagonalFilterParams p{random::uniform(rng, 0.05, 1.0), random::uniform(rng, 0.05, 1.0),
                                 random::uniform(rng)};
    const FamilyCase c = random_family_case(rng, d, m, u, eps, p);
    REQUIRE(c.report.uniform);
    CHECK(*c.report.amplification == Approx(amplification_noisy_closed(c.geom, p)).epsilon(1e-8));
    CHECK(*c.report.efficiency == Approx(efficiency_noisy_closed(c.geom, p)).epsilon(1e-8));
    if (m >= 2) CHECK(c.report.spread <= 1e-8);
  }
}

TEST_CASE("amplification_t_closed and t_pp") {
  const NoiseGeometry g01(0.1, 2, 2);
  const TppResult tp01 = t_pp(g01);
  CHECK(tp01.t2 == Approx(1.0 / 19.0).epsilon(1e-14));
  CHECK(amplification_t_closed(g01, tp01.t2) == Approx(100.0 / 19.0).epsilon(1e-12));  // 5.263

  const NoiseGeometry g(0.5, 2, 2);
  CHECK(t_pp(g).t2 == Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(argmax_t2(g) == Approx(1.0 / 3.0).epsilon(1e-7));
  CHECK(t_pp(NoiseGeometry(0.5, 3, 1)).degenerate);
  CHECK(t_pp(NoiseGeometry(0.5, 3, 1)).t2 == 0.0);
  CHECK(t_pp(NoiseGeometry(0.0, 3, 2)).unbounded);
  CHECK(max_amplification(NoiseGeometry(0.0, 3, 2)) == std::numeric_limits<double>::infinity());

  const NoiseGeometry g10(0.95, 10, 5);
  CHECK(t_pp(g10).t2 == Approx(1.9 / 1.45).epsilon(1e-14));
  CHECK(argmax_t2(g10) == Approx(1.9 / 1.45).epsilon(1e-7));
  CHECK(error_of([&] { amplification_t_closed(g, 0.0); }) == ErrorCode::InvalidArgument);

  // Vanishes at both ends.
  CHECK(amplification_t_closed(g, 1e-12) < 1e-10);
  CHECK(amplification_t_closed(g, 1e12) < 1e-10);

  // Formula vs argmax oracle; strict monotonicity either side of t_pp on a 1000-point grid.
  random::Rng rng = random::make_rng(43);
  for (int t = 0; t < 100; ++t) {
    const int d = random::uniform_int(rng, 2, 50);
    const int u = random::uniform_int(rng, 2, d);
    const NoiseGeometry ng(random::uniform(rng, 0.01, 1.0), d, u);
    const double tp = t_pp(ng).t2;
    CHECK(argmax_t2(ng) == Approx(tp).epsilon(1e-6));
    CHECK(max_amplification(ng) == Approx(max_over_t(ng, false)).epsilon(1e-12));
    double prev = amplification_t_closed(ng, tp * 1e-3);
    for (int k = 1; k <= 500; ++k) {
      const double x = tp * std::pow(10.0, -3.0 + 3.0 * k / 500.0);
      const double v = amplification_t_closed(ng, x);
      if (k < 500) CHECK(v > prev);
      prev = v;
    }
    for (int k = 1; k <= 500; ++k) {
      const double x = tp * std::pow(10.0, 3.0 * k / 500.0);
      const double v = amplification_t_closed(ng, x);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("max amplification limits") {
  CHECK(max_amplification_limit(0.5) == 2.0);
  CHECK(error_of([] { max_amplification_limit(0.0); }) == ErrorCode::InvalidArgument);

  // Large-d maximum at d = u = 2000, frozen from the golden-section oracle:
  // 1/eps is approached from below; at eps = 0.2 the gap is about 4 %.
  for (double eps : {0.2, 0.5, 0.8}) {
    const NoiseGeometry g(eps, 2000, 2000);
    const double oracle_max = max_over_t(g, false);
    CHECK(max_amplification(g) == Approx(oracle_max).epsilon(1e-10));
    CHECK(oracle_max < 1.0 / eps);
    CHECK(oracle_max > 0.95 / eps);
  }
  // Exact value at eps = 1: 2d / (1 + sqrt(u - 1))^2. Equal to d/u only when u = 2.
  for (int d : {2, 3, 10, 50}) {
    for (int u = 1; u <= d; ++u) {
      const NoiseGeometry g(1.0, d, u);
      const double expect = max_amplification_full_noise(d, u);
      CHECK(max_amplification(g) == Approx(expect).epsilon(1e-12));
      if (u >= 2) CHECK(max_over_t(g, false) == Approx(expect).epsilon(1e-10));
      if (u == 2) CHECK(expect == Approx(static_cast<double>(d) / u).epsilon(1e-14));
      if (u >= 3) CHECK(expect > static_cast<double>(d) / u * (1.0 + 1e-3));
    }
  }
  CHECK(max_amplification_full_noise(10, 5) == Approx(20.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("max amplification shapes in eps") {
  for (auto [d, u] : {std::pair{2, 2}, std::pair{10, 5}, std::pair{10, 10}, std::pair{4, 3}}) {
    // Against the noiseless probe: decreasing, zero at eps = 1.
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 200; ++k) {
      const double eps = k / 200.0;
      const double v = max_over_t(NoiseGeometry(eps, d, u), true);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(max_over_t(NoiseGeometry(1.0, d, u), true) == 0.0);

    // Against the equally noisy state: interior minimum, then rising to the eps = 1
    // value. At d = u = 2 the curve instead falls monotonically onto that value.
    std::vector<double> vals;
    for (int k = 1; k <= 200; ++k) vals.push_back(max_amplification(NoiseGeometry(k / 200.0, d, u)));
    CHECK(vals.back() == Approx(max_amplification_full_noise(d, u)).epsilon(1e-12));
    if (d == 2) {
      for (std::size_t k = 1; k < vals.size(); ++k) CHECK(vals[k] < vals[k - 1]);
      continue;
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    CHECK(it != vals.begin());
    CHECK(it != vals.end() - 1);
    for (auto jt = it + 1; jt != vals.end(); ++jt) CHECK(*jt > *(jt - 1));
  }
}

TEST_CASE("postselection-probability expansion") {
  const ParameterizedModel q = qubit_y_model();
  // JAL at theta0 on the qubit: P(delta) = t2 + (1 - t2) sin^2(delta / 2), so the
  // s^2 coefficient is (1 - t2) I / 4 with I = 1.
  const ExpansionReport r = ps_prob_expansion_check(q, vec1(0.2), vec1(1.0), 0.25);
  CHECK(r.p_at_zero == Approx(0.25).epsilon(1e-14));
  CHECK(r.quadratic_form == Approx(1.0).epsilon(1e-10));
  CHECK(r.coefficient == Approx(0.1875).epsilon(1e-4));
  CHECK(r.predicted_corrected == Approx(0.1875).epsilon(1e-10));
  CHECK(r.predicted_stated == Approx(0.75).epsilon(1e-10));
  CHECK(r.residual_exponent >= 2.8);
  for (std::size_t k = 0; k < r.scales.size(); ++k)
    CHECK(r.probs[k] == Approx(0.25 + 0.75 * std::pow(std::sin(r.scales[k] / 2.0), 2)).epsilon(1e-12));

  CHECK(error_of([&] { ps_prob_expansion_check(q, vec1(0.2), vec1(0.0), 0.25); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { ps_prob_expansion_check(q, vec1(0.2), RVector::Ones(2), 0.25); }) ==
        ErrorCode::DimensionMismatch);

  random::Rng rng = random::make_rng(44);
  for (int t = 0; t < 20; ++t) {
    const int d = random::uniform_int(rng, 2, 6);
    const int m = random::uniform_int(rng, 1, 3);
    const ParameterizedModel model = random::model(rng, d, m);
    const double t2 = random::uniform(rng, 0.05, 0.9);
    const ExpansionReport e = ps_prob_expansion_check(model, random::real_vector(rng, m, -1.0, 1.0),
                                                      random::real_vector(rng, m, -1.0, 1.0), t2);
    CHECK(e.coefficient > 0.0);
    CHECK(e.coefficient == Approx(e.predicted_corrected).epsilon(1e-2));
    CHECK(e.residual_exponent >= 2.8);
  }
}

TEST_CASE("amplification bound under a mis-set filter") {
  const ParameterizedModel q = qubit_y_model();
  const double t2 = 0.25;
  const BoundReport z = amplification_bound_check(q, vec1(0.2), vec1(0.0), t2);
  CHECK(z.measured == Approx(4.0).epsilon(1e-10));

  // Qubit oracle: A(delta) = t2 / P(delta)^2 exactly, P as in the expansion above.
  const double delta = 0.01;
  const BoundReport r = amplification_bound_check(q, vec1(0.2), vec1(delta), t2);
  const double p = t2 + (1.0 - t2) * std::pow(std::sin(delta / 2.0), 2);
  CHECK(r.measured == Approx(t2 / (p * p)).epsilon(1e-9));
  CHECK(r.bound_corrected == Approx(4.0 * (1.0 - 3.0 * delta * delta / 4.0)).epsilon(1e-12));
  CHECK(r.holds_corrected);
  CHECK_FALSE(r.holds_stated);
  CHECK(r.decreased);
  CHECK(r.fit_holds_corrected);
  CHECK_FALSE(r.fit_holds_stated);
  // Deficit of t2 / P^2 is (1 - t2) / (2 t2^2) per unit delta^2: twice the corrected requirement.
  CHECK(r.deficit_coefficient == Approx((1.0 - t2) / (2.0 * t2 * t2)).epsilon(1e-3));
  CHECK(r.deficit_coefficient == Approx(2.0 * r.deficit_required_corrected).epsilon(1e-3));

  // Penalty coefficient (1 - t2) / t2 shrinks toward t2 = 1.
  double prev = std::numeric_limits<double>::infinity();
  for (double tt : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const BoundReport b = amplification_bound_check(q, vec1(0.2), vec1(delta), tt);
    const double pen = (1.0 - tt * b.bound_stated) / b.quadratic_form;
    CHECK(pen == Approx((1.0 - tt) / tt).epsilon(1e-9));
    CHECK(pen < prev);
    prev = pen;
  }

  random::Rng rng = random::make_rng(45);
  for (int t = 0; t < 10; ++t) {
    const int d = random::uniform_int(rng, 2, 6);
    const int m = random::uniform_int(rng, 1, 3);
    const ParameterizedModel model = random::model(rng, d, m);
    RVector dl = random::real_vector(rng, m, -1.0, 1.0);
    dl *= 0.01 / dl.norm();
    const BoundReport b = amplification_bound_check(model, random::real_vector(rng, m, -1.0, 1.0), dl, 0.3);
    CHECK(b.decreased);
    CHECK(b.fit_holds_corrected);
  }
}

TEST_CASE("noise-after losslessness") {
  const LosslessnessReport r = noise_after_losslessness_check(qubit_y_model(), vec1(0.4), 0.25, 0.5);
  CHECK(r.ratio_error < 1e-8);
  CHECK(r.ratio_min == Approx(4.0).epsilon(1e-9));
  CHECK(r.prefactor_expected == Approx(0.25));
  CHECK(r.prefactor_error < 1e-8);
  const LosslessnessReport z = noise_after_losslessness_check(qubit_y_model(), vec1(0.4), 0.25, 0.0);
  CHECK(z.efficiency == Approx(1.0).epsilon(1e-9));

  random::Rng rng = random::make_rng(46);
  for (double eps : {0.1, 0.5, 0.9}) {
    for (int d : {2, 4, 8}) {
      const int m = random::uniform_int(rng, 1, std::min(3, d - 1));
      const LosslessnessReport l = noise_after_losslessness_check(
          random::model(rng, d, m), random::real_vector(rng, m, -1.0, 1.0), random::uniform(rng, 0.05, 1.0), eps);
      CHECK(l.ratio_error < 1e-8 * (1.0 + l.ratio_max));
      CHECK(l.prefactor_error < 1e-8);
      CHECK(l.prefactor_expected == Approx((1 - eps) * (1 - eps) / (1 - eps + 2 * eps / d)).epsilon(1e-14));
    }
  }
}

TEST_CASE("first-order invariance of the noisy JAL amplification") {
  const InvarianceReport r = first_order_invariance_check(qubit_y_model(), vec1(0.3), 1.0 / 3.0, 0.5);
  CHECK(r.max_abs_derivative <= 1e-6);
  // Here t2 = t_pp^2 for d = u = 2, where both eigenvalues of the postselected state
  // equal 1/2; the degenerate pair splits linearly in delta.
  CHECK(r.eigenvalue_exponent == Approx(1.0).epsilon(1e-2));
  const InvarianceReport nd = first_order_invariance_check(qubit_y_model(), vec1(0.3), 0.25, 0.5);
  CHECK(nd.max_abs_derivative <= 1e-6);
  CHECK(nd.eigenvalue_exponent >= 1.8);
  CHECK(error_of([] { first_order_invariance_check(qubit_y_model(), vec1(0.3), 0.3, 0.0); }) ==
        ErrorCode::InvalidArgument);

  // Independent central difference of the brute-force amplification.
  const ParameterizedModel q = qubit_y_model();
  const Filter f = jal_filter(evolve(q, vec1(0.3)), 1.0 / 3.0);
  auto amp = [&](double dl) {
    const StateDerivs a = prepare_state(q, vec1(0.3 + dl), f.K(), 0.5, NoiseOrder::Before);
    const StateDerivs b = prepare_state(q, vec1(0.3 + dl), CMatrix(), 0.5, NoiseOrder::Before);
    return qfim_mixed(a.rho, a.drho)(0, 0) / qfim_mixed(b.rho, b.drho)(0, 0);
  };
  CHECK(std::abs(oracle::central_diff(amp, 0.0, 1e-4)) <= 1e-6);

  random::Rng rng = random::make_rng(47);
  for (int t = 0; t < 5; ++t) {
    const int d = random::uniform_int(rng, 2, 5);
    const int m = random::uniform_int(rng, 1, 2);
    const InvarianceReport ri = first_order_invariance_check(random::model(rng, d, m),
                                                             random::real_vector(rng, m, -1.0, 1.0), 0.25, 0.3);
    CHECK(ri.max_abs_derivative <= 1e-6);
  }
}

TEST_CASE("max_directional_amplification and loglog_slope") {
  RMatrix a(2, 2), b(2, 2);
  a << 3.0, 0.0, 0.0, 1.0;
  b = RMatrix::Identity(2, 2);
  CHECK(max_directional_amplification(a, b) == Approx(3.0));
  CHECK(max_directional_amplification(2.0 * b, b) == Approx(2.0));
  std::vector<double> x{1.0, 2.0, 4.0, 8.0}, y;
  for (double v : x) y.push_back(5.0 * v * v * v);
  CHECK(loglog_slope(x, y) == Approx(3.0).epsilon(1e-12));
  CHECK(error_of([] { loglog_slope({1.0}, {1.0}); }) == ErrorCode::InvalidArgument);
}
