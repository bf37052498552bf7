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

#include <optional>
#include <vector>

#include "psfilter/filters.hpp"
#include "psfilter/fisher.hpp"
#include "psfilter/model.hpp"

namespace psfilter {

/// Depolarizing-noise geometry: b = 1 - eps + eps/d, c = (eps/d)(u - 1), g = eps/d.
struct NoiseGeometry {
  double eps;
  int d;
  int u;

  NoiseGeometry(double eps, int d, int u);

  double b() const noexcept { return 1.0 - eps + eps / d; }
  double c() const noexcept { return (eps / d) * (u - 1); }
  double g() const noexcept { return eps / d; }
  /// I(rho^n) / I(rho) = (1 - eps)^2 / (1 - eps + 2 eps/d).
  double noise_factor() const noexcept;
};

struct AmplificationReport {
  /// Set only when the entrywise ratios agree within the uniformity tolerance.
  std::optional<double> amplification;
  std::optional<double> efficiency;
  double postselect_prob = 1.0;
  bool uniform = false;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// (max - min) / |mean| over compared entries.
  double spread = 0.0;
  int compared_entries = 0;
};

/// Entrywise after/before ratios. Entries where both matrices vanish (below
/// 1e-9 of the largest |before| entry) are skipped.
AmplificationReport amplification_numeric(const QFIMatrix& after, const QFIMatrix& before,
                                          double postselect_prob = 1.0, double uniform_tol = 1e-6,
                                          bool require_uniform = false);

/// Amplification of the diagonal family against the equally noisy, unfiltered state.
double amplification_noisy_closed(const NoiseGeometry& geom, const DiagonalFilterParams& params);

/// Compression efficiency of the diagonal family. Independent of D.
double efficiency_noisy_closed(const NoiseGeometry& geom, const DiagonalFilterParams& params);

/// D = 0 family with p / B = t2.
double amplification_t_closed(const NoiseGeometry& geom, double t2);

/// Same family measured against the noiseless probe.
double amplification_t_vs_noiseless(const NoiseGeometry& geom, double t2);

struct TppResult {
  double t2 = 0.0;
  /// eps = 0: amplification grows without bound as t2 -> 0.
  bool unbounded = false;
  /// u = 1: no orthogonal information direction.
  bool degenerate = false;
};

TppResult t_pp(const NoiseGeometry& geom);

/// max over t of amplification_t_closed; +infinity when eps = 0.
double max_amplification(const NoiseGeometry& geom);

/// 1 / eps, the large-d value of the maximum amplification with u close to d.
double max_amplification_limit(double eps);

/// Exact maximum amplification at eps = 1: 2d / (1 + sqrt(u - 1))^2.
double max_amplification_full_noise(int d, int u);

// ---------------------------------------------------------------------------
// Perturbative checks around a filter built at theta0 and evaluated at theta0 + delta.

struct SweepOptions {
  double s_min = 1e-3;
  double s_max = 1e-1;
  int n = 25;
};

struct ExpansionReport {
  double t2 = 0.0;
  double p_at_zero = 0.0;
  double quadratic_form = 0.0;  // dhat^T I dhat
  double coefficient = 0.0;     // fitted s^2 coefficient of P(s) - t2
  double predicted_stated = 0.0;     // (1 - t2) dhat^T I dhat
  double predicted_corrected = 0.0;  // (1 - t2) dhat^T I dhat / 4
  double residual_exponent = 0.0;
  std::vector<double> scales;
  std::vector<double> probs;
};

ExpansionReport ps_prob_expansion_check(const ParameterizedModel& model, const RVector& theta0,
                                        const RVector& delta, double t2, const SweepOptions& sweep = {});

struct BoundReport {
  double t2 = 0.0;
  double measured = 0.0;  // largest amplification over parameter directions
  double quadratic_form = 0.0;  // delta^T I delta
  double bound_stated = 0.0;     // (1/t2)[1 - ((1-t2)/t2) delta^T I delta]
  double bound_corrected = 0.0;  // same with delta^T I delta / 4
  bool holds_stated = false;
  bool holds_corrected = false;
  bool decreased = false;  // measured <= 1/t2
  /// Fitted s^2 coefficient of 1/t2 - A(s) along the unit direction of delta,
  /// and the coefficients the two bounds require ((1-t2)/t2^2 dhat^T I dhat, optionally / 4).
  double deficit_coefficient = 0.0;
  double deficit_required_stated = 0.0;
  double deficit_required_corrected = 0.0;
  /// Second-order form of the bound: fitted deficit >= required (relative slack 1e-3).
  bool fit_holds_stated = false;
  bool fit_holds_corrected = false;
};

BoundReport amplification_bound_check(const ParameterizedModel& model, const RVector& theta0,
                                      const RVector& delta, double t2, double bound_tol = 1e-6);

struct LosslessnessReport {
  double t2 = 0.0;
  double eps = 0.0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double ratio_error = 0.0;  // max |ratio - 1/t2|
  double prefactor_expected = 0.0;
  double prefactor_error = 0.0;  // max entrywise |I(rho^n)/I(rho) - expected|
  double efficiency = 0.0;
};

LosslessnessReport noise_after_losslessness_check(const ParameterizedModel& model, const RVector& theta,
                                                  double t2, double eps);

struct InvarianceReport {
  double step = 0.0;
  RMatrix derivatives;  // (parameter k, direction i): dA_kk / d delta_i
  double max_abs_derivative = 0.0;
  double eigenvalue_exponent = 0.0;
};

InvarianceReport first_order_invariance_check(const ParameterizedModel& model, const RVector& theta0,
                                              double t2, double eps, double step = 1e-4,
                                              const SweepOptions& sweep = {});

// ---------------------------------------------------------------------------
// Qutrit example: probe psi, derivative alpha |psi_perp>, third state |n>, all in
// the (psi, psi_perp, n) basis and at eps = 1/2 up to an overall factor.

enum class QutritNoiseTerm {
  Displayed,  // rho' = K rho K^dagger + K^dagger K / d
  Physical,   // rho' = K rho K^dagger + K K^dagger / d, i.e. noise before the filter
};

/// Information rate P I of the postselected qutrit state, from qfim_reduced.
double qutrit_info_rate(const Filter& f, double alpha_abs2, QutritNoiseTerm term);

/// 12 |alpha|^2 (1 + b^2) t^2 / (1 + b^2 + (4 + 3 b^2) t^2)
double qutrit_offdiag_rate_closed(double t2, double alpha_abs2, double b);

/// 12 |alpha|^2 t^2 / (1 + 4 t^2)
double qutrit_diag_rate_closed(double t2, double alpha_abs2);

/// Largest generalized eigenvalue of (after, before): the maximal amplification
/// over parameter directions. Falls back to the largest diagonal ratio when
/// before is singular.
double max_directional_amplification(const QFIMatrix& after, const QFIMatrix& before);

/// Least-squares slope of log|y| against log x over entries with |y| > floor.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-300);

}  // namespace psfilter
