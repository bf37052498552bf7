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

#include "psfilter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psfilter/channels.hpp"
#include "psfilter/error.hpp"

namespace psfilter {

NoiseGeometry::NoiseGeometry(double eps_, int d_, int u_) : eps(eps_), d(d_), u(u_) {
  require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0, ErrorCode::InvalidArgument,
          "NoiseGeometry: eps must lie in [0, 1]");
  require(d >= 2, ErrorCode::InvalidArgument, "NoiseGeometry: d must be at least 2");
  require(u >= 1 && u <= d, ErrorCode::InvalidArgument, "NoiseGeometry: u must lie in [1, d]");
}

double NoiseGeometry::noise_factor() const noexcept {
  return (1.0 - eps) * (1.0 - eps) / (1.0 - eps + 2.0 * g());
}

AmplificationReport amplification_numeric(const QFIMatrix& after, const QFIMatrix& before,
                                          double postselect_prob, double uniform_tol,
                                          bool require_uniform) {
  require(after.rows() == before.rows() && after.cols() == before.cols() && after.size() > 0,
          ErrorCode::DimensionMismatch, "amplification_numeric: shape mismatch");
  require(after.allFinite() && before.allFinite(), ErrorCode::NonFinite,
          "amplification_numeric: non-finite input");
  const double floor = 1e-9 * std::max(before.cwiseAbs().maxCoeff(), after.cwiseAbs().maxCoeff());
  AmplificationReport r;
  r.postselect_prob = postselect_prob;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < after.rows(); ++i) {
    for (Eigen::Index j = i; j < after.cols(); ++j) {
      const double b = before(i, j);
      const double a = after(i, j);
      if (std::abs(b) <= floor) {
        require(std::abs(a) <= floor, ErrorCode::InvalidArgument,
                "amplification_numeric: baseline entry vanishes where the filtered entry does not");
        continue;
      }
      const double q = a / b;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      sum += q;
      ++count;
    }
  }
  require(count > 0, ErrorCode::InvalidArgument, "amplification_numeric: baseline QFIM vanishes");
  const double mean = sum / count;
  r.min_ratio = lo;
  r.max_ratio = hi;
  r.compared_entries = count;
  r.spread = (hi - lo) / std::max(std::abs(mean), std::numeric_limits<double>::min());
  r.uniform = r.spread <= uniform_tol;
  if (r.uniform) {
    r.amplification = mean;
    r.efficiency = mean * postselect_prob;
  } else if (require_uniform) {
    fail(ErrorCode::NonUniformAmplification,
         "amplification_numeric: entrywise ratios are not uniform (spread " + std::to_string(r.spread) +
             ")");
  }
  return r;
}

namespace {

void check_family(const DiagonalFilterParams& p) {
  for (double v : {p.p_theta, p.B, p.D}) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, ErrorCode::InvalidArgument,
            "diagonal family parameters must lie in [0, 1]");
  }
  require(p.B > 0.0, ErrorCode::InvalidArgument, "closed form requires B > 0");
}

}  // namespace

double amplification_noisy_closed(const NoiseGeometry& geom, const DiagonalFilterParams& params) {
  check_family(params);
  const double r = params.p_theta / params.B;
  const double b = geom.b();
  const double g = geom.g();
  const double num = (1.0 - geom.eps + 2.0 * g) * r;
  const double first = b * r + g * ((geom.u - 1) + (params.D / params.B) * (geom.d - geom.u));
  const double second = b * r + g;
  return num / (first * second);
}

double efficiency_noisy_closed(const NoiseGeometry& geom, const DiagonalFilterParams& params) {
  check_family(params);
  const double r = params.p_theta / params.B;
  return (1.0 - geom.eps + 2.0 * geom.g()) * params.p_theta / (geom.b() * r + geom.g());
}

double amplification_t_closed(const NoiseGeometry& geom, double t2) {
  require(std::isfinite(t2) && t2 > 0.0, ErrorCode::InvalidArgument,
          "amplification_t_closed: t2 must be positive");
  const double b = geom.b();
  const double c = geom.c();
  const double g = geom.g();
  return (1.0 - geom.eps + 2.0 * g) * t2 / ((b * t2 + c) * (b * t2 + g));
}

double amplification_t_vs_noiseless(const NoiseGeometry& geom, double t2) {
  return amplification_t_closed(geom, t2) * geom.noise_factor();
}

TppResult t_pp(const NoiseGeometry& geom) {
  TppResult r;
  if (geom.eps == 0.0) {
    r.unbounded = true;
    return r;
  }
  if (geom.u == 1) {
    r.degenerate = true;
    return r;
  }
  r.t2 = std::sqrt(static_cast<double>(geom.u - 1)) * geom.eps /
         (geom.d * (1.0 - geom.eps) + geom.eps);
  return r;
}

double max_amplification(const NoiseGeometry& geom) {
  const TppResult tp = t_pp(geom);
  if (tp.unbounded) return std::numeric_limits<double>::infinity();
  if (tp.degenerate) {
    // Supremum approached as t2 -> 0 when c = 0.
    const double b = geom.b();
    const double g = geom.g();
    return (b + g) / (b * g);
  }
  return amplification_t_closed(geom, tp.t2);
}

double max_amplification_limit(double eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps <= 1.0, ErrorCode::InvalidArgument,
          "max_amplification_limit: eps must lie in (0, 1]");
  return 1.0 / eps;
}

double max_amplification_full_noise(int d, int u) {
  require(d >= 2 && u >= 1 && u <= d, ErrorCode::InvalidArgument,
          "max_amplification_full_noise: invalid (d, u)");
  const double s = 1.0 + std::sqrt(static_cast<double>(u - 1));
  return 2.0 * d / (s * s);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(std::abs(y[i]) > floor)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  require(n >= 2, ErrorCode::InvalidArgument, "loglog_slope: fewer than two usable points");
  const double den = n * sxx - sx * sx;
  require(den > 0.0, ErrorCode::InvalidArgument, "loglog_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / den;
}

namespace {

std::vector<double> log_grid(const SweepOptions& s) {
  require(s.n >= 3 && s.s_min > 0.0 && s.s_max > s.s_min, ErrorCode::InvalidArgument,
          "sweep: need n >= 3 and 0 < s_min < s_max");
  std::vector<double> out(static_cast<std::size_t>(s.n));
  const double a = std::log(s.s_min);
  const double b = std::log(s.s_max);
  for (int i = 0; i < s.n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (s.n - 1));
  return out;
}

// Fits y(s) / s^2 = a + c s + e s^2 + f s^3 and returns a. The two extra
// orders keep the s^2 coefficient unbiased when the sweep reaches large s.
double fit_quadratic_coefficient(const std::vector<double>& s, const std::vector<double>& y) {
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  RMatrix a(n, 4);
  RVector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double si = s[static_cast<std::size_t>(i)];
    a(i, 0) = 1.0;
    a(i, 1) = si;
    a(i, 2) = si * si;
    a(i, 3) = si * si * si;
    rhs(i) = y[static_cast<std::size_t>(i)] / (si * si);
  }
  return a.colPivHouseholderQr().solve(rhs)(0);
}

RVector unit_direction(const RVector& delta, int m) {
  require(delta.size() == m, ErrorCode::DimensionMismatch, "delta length must equal M");
  require(delta.allFinite(), ErrorCode::NonFinite, "delta is not finite");
  const double n = delta.norm();
  require(n > 0.0, ErrorCode::InvalidArgument, "delta direction must be non-zero");
  return delta / n;
}

}  // namespace

double max_directional_amplification(const QFIMatrix& after, const QFIMatrix& before) {
  if (before.rows() == 1) return after(0, 0) / before(0, 0);
  Eigen::SelfAdjointEigenSolver<RMatrix> eb(before);
  if (eb.eigenvalues().minCoeff() > 1e-12 * eb.eigenvalues().maxCoeff()) {
    Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> ge(after, before);
    return ge.eigenvalues().maxCoeff();
  }
  double best = 0.0;
  for (Eigen::Index k = 0; k < before.rows(); ++k) {
    if (before(k, k) > 1e-14) best = std::max(best, after(k, k) / before(k, k));
  }
  return best;
}

ExpansionReport ps_prob_expansion_check(const ParameterizedModel& model, const RVector& theta0,
                                        const RVector& delta, double t2, const SweepOptions& sweep) {
  const RVector dir = unit_direction(delta, model.num_params());
  const PureState psi0 = evolve(model, theta0);
  const Filter f = jal_filter(psi0, t2);
  const QFIMatrix fisher = qfim_pure(psi0.vec(), derivative_states(model, theta0));
  ExpansionReport r;
  r.t2 = t2;
  r.quadratic_form = dir.dot(fisher * dir);
  require(r.quadratic_form > 1e-14, ErrorCode::InvalidArgument,
          "ps_prob_expansion_check: model carries no information along delta");
  r.p_at_zero = psi0.vec().dot(f.F() * psi0.vec()).real();
  r.predicted_stated = (1.0 - t2) * r.quadratic_form;
  r.predicted_corrected = 0.25 * r.predicted_stated;
  r.scales = log_grid(sweep);
  std::vector<double> excess;
  for (double s : r.scales) {
    const CVector v = evolve(model, theta0 + s * dir).vec();
    const double p = v.dot(f.F() * v).real();
    r.probs.push_back(p);
    excess.push_back(p - t2);
  }
  r.coefficient = fit_quadratic_coefficient(r.scales, excess);
  std::vector<double> resid;
  for (std::size_t i = 0; i < excess.size(); ++i) {
    resid.push_back(excess[i] - r.coefficient * r.scales[i] * r.scales[i]);
  }
  // Asymptotic order: slope over the lower half of the sweep, where the series
  // has converged even for fast-rotating models.
  const std::size_t half = r.scales.size() / 2 + 1;
  r.residual_exponent = loglog_slope(std::vector<double>(r.scales.begin(), r.scales.begin() + half),
                                     std::vector<double>(resid.begin(), resid.begin() + half), 1e-15);
  return r;
}

BoundReport amplification_bound_check(const ParameterizedModel& model, const RVector& theta0,
                                      const RVector& delta, double t2, double bound_tol) {
  require(std::isfinite(t2) && t2 > 0.0 && t2 <= 1.0, ErrorCode::InvalidArgument,
          "amplification_bound_check: t2 must lie in (0, 1]");
  const int m = model.num_params();
  require(delta.size() == m, ErrorCode::DimensionMismatch, "delta length must equal M");
  const PureState psi0 = evolve(model, theta0);
  const Filter f = jal_filter(psi0, t2);
  const QFIMatrix fisher0 = qfim_pure(psi0.vec(), derivative_states(model, theta0));

  auto amp_at = [&](const RVector& dlt) {
    const RVector th = theta0 + dlt;
    const CVector v = evolve(model, th).vec();
    const std::vector<CVector> dv = derivative_states(model, th);
    return max_directional_amplification(qfim_pure_postselected(v, dv, f.F()), qfim_pure(v, dv));
  };

  BoundReport r;
  r.t2 = t2;
  r.measured = amp_at(delta);
  r.quadratic_form = delta.dot(fisher0 * delta);
  const double k = (1.0 - t2) / t2;
  r.bound_stated = (1.0 - k * r.quadratic_form) / t2;
  r.bound_corrected = (1.0 - k * 0.25 * r.quadratic_form) / t2;
  r.holds_stated = r.measured <= r.bound_stated + bound_tol;
  r.holds_corrected = r.measured <= r.bound_corrected + bound_tol;
  r.decreased = r.measured <= 1.0 / t2 + 1e-12;
  if (delta.norm() > 0.0) {
    const RVector dir = delta / delta.norm();
    const std::vector<double> s = log_grid({});
    std::vector<double> deficit;
    for (double si : s) deficit.push_back(1.0 / t2 - amp_at(si * dir));
    r.deficit_coefficient = fit_quadratic_coefficient(s, deficit);
    r.deficit_required_stated = k * dir.dot(fisher0 * dir) / t2;
    r.deficit_required_corrected = 0.25 * r.deficit_required_stated;
    r.fit_holds_stated = r.deficit_coefficient >= (1.0 - 1e-3) * r.deficit_required_stated;
    r.fit_holds_corrected = r.deficit_coefficient >= (1.0 - 1e-3) * r.deficit_required_corrected;
  }
  return r;
}

LosslessnessReport noise_after_losslessness_check(const ParameterizedModel& model, const RVector& theta,
                                                  double t2, double eps) {
  require(std::isfinite(t2) && t2 > 0.0 && t2 <= 1.0, ErrorCode::InvalidArgument,
          "noise_after_losslessness_check: t2 must lie in (0, 1]");
  const PureState psi = evolve(model, theta);
  const Filter f = jal_filter(psi, t2);
  const CMatrix none;
  const StateDerivs clean = prepare_state(model, theta, none, 0.0, NoiseOrder::None);
  const StateDerivs noisy = prepare_state(model, theta, none, eps, NoiseOrder::Before);
  const StateDerivs after = prepare_state(model, theta, f.K(), eps, NoiseOrder::After);
  const QFIMatrix q_clean = qfim_mixed(clean.rho, clean.drho);
  const QFIMatrix q_noisy = qfim_mixed(noisy.rho, noisy.drho);
  const QFIMatrix q_after = qfim_mixed(after.rho, after.drho);

  LosslessnessReport r;
  r.t2 = t2;
  r.eps = eps;
  const AmplificationReport amp = amplification_numeric(q_after, q_noisy, after.prob);
  r.ratio_min = amp.min_ratio;
  r.ratio_max = amp.max_ratio;
  r.ratio_error = std::max(std::abs(amp.min_ratio - 1.0 / t2), std::abs(amp.max_ratio - 1.0 / t2));
  r.efficiency = after.prob * 0.5 * (amp.min_ratio + amp.max_ratio);
  const int d = static_cast<int>(model.dim());
  r.prefactor_expected = (1.0 - eps) * (1.0 - eps) / (1.0 - eps + 2.0 * eps / d);
  if (r.prefactor_expected == 0.0) {
    r.prefactor_error = q_noisy.cwiseAbs().maxCoeff();
  } else {
    const AmplificationReport pre = amplification_numeric(q_noisy, q_clean);
    r.prefactor_error = std::max(std::abs(pre.min_ratio - r.prefactor_expected),
                                 std::abs(pre.max_ratio - r.prefactor_expected));
  }
  return r;
}

InvarianceReport first_order_invariance_check(const ParameterizedModel& model, const RVector& theta0,
                                              double t2, double eps, double step,
                                              const SweepOptions& sweep) {
  require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, ErrorCode::InvalidArgument,
          "first_order_invariance_check: eps must lie in (0, 1)");
  require(step > 0.0, ErrorCode::InvalidArgument, "first_order_invariance_check: step must be positive");
  const int m = model.num_params();
  const Filter f = jal_filter(evolve(model, theta0), t2);
  const CMatrix none;

  auto diag_amp = [&](const RVector& th) {
    const StateDerivs ps = prepare_state(model, th, f.K(), eps, NoiseOrder::Before);
    const StateDerivs base = prepare_state(model, th, none, eps, NoiseOrder::Before);
    const QFIMatrix a = qfim_mixed(ps.rho, ps.drho);
    const QFIMatrix b = qfim_mixed(base.rho, base.drho);
    RVector out(m);
    for (int k = 0; k < m; ++k) out(k) = a(k, k) / b(k, k);
    return out;
  };

  InvarianceReport r;
  r.step = step;
  r.derivatives = RMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    RVector e = RVector::Zero(m);
    e(i) = step;
    r.derivatives.col(i) = (diag_amp(theta0 + e) - diag_amp(theta0 - e)) / (2.0 * step);
  }
  r.max_abs_derivative = r.derivatives.cwiseAbs().maxCoeff();

  auto spectrum = [&](const RVector& th) {
    const Postselected ps = noise_before_ps_state(model, th, f.K(), eps);
    return linalg::eigenvalues_hermitian(ps.state.mat());
  };
  const RVector dir = RVector::Ones(m) / std::sqrt(static_cast<double>(m));
  const RVector ref = spectrum(theta0);
  const std::vector<double> s = log_grid(sweep);
  std::vector<double> shift;
  for (double si : s) shift.push_back((spectrum(theta0 + si * dir) - ref).cwiseAbs().maxCoeff());
  r.eigenvalue_exponent = loglog_slope(s, shift, 1e-14);
  return r;
}

double qutrit_info_rate(const Filter& f, double alpha_abs2, QutritNoiseTerm term) {
  require(f.dim() == 3, ErrorCode::DimensionMismatch, "qutrit_info_rate: filter must be 3 x 3");
  require(std::isfinite(alpha_abs2) && alpha_abs2 >= 0.0, ErrorCode::InvalidArgument,
          "qutrit_info_rate: |alpha|^2 must be non-negative");
  const CMatrix& k = f.K();
  CVector psi = CVector::Zero(3);
  psi(0) = 1.0;
  CVector dpsi = CVector::Zero(3);
  dpsi(1) = std::sqrt(alpha_abs2);
  const CVector kp = k * psi;
  const CVector kd = k * dpsi;
  const CMatrix noise = term == QutritNoiseTerm::Displayed ? f.F() : CMatrix(k * k.adjoint());
  const CMatrix rho = kp * kp.adjoint() + noise / 3.0;
  const CMatrix drho = kd * kp.adjoint() + kp * kd.adjoint();
  return rho.trace().real() * qfim_reduced(rho, drho);
}

double qutrit_offdiag_rate_closed(double t2, double alpha_abs2, double b) {
  const double b2 = b * b;
  return 12.0 * alpha_abs2 * (1.0 + b2) * t2 / (1.0 + b2 + (4.0 + 3.0 * b2) * t2);
}

double qutrit_diag_rate_closed(double t2, double alpha_abs2) {
  return 12.0 * alpha_abs2 * t2 / (1.0 + 4.0 * t2);
}

}  // namespace psfilter
