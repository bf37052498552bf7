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

#include "psfilter/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "psfilter/analysis.hpp"
#include "psfilter/channels.hpp"
#include "psfilter/error.hpp"
#include "psfilter/filters.hpp"
#include "psfilter/fisher.hpp"
#include "psfilter/optimize.hpp"
#include "psfilter/random.hpp"

namespace psfilter::verify {

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || !c.gating; });
}

int VerifyReport::failures() const noexcept {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.gating && !c.passed; }));
}

const std::vector<std::string>& suites() {
  static const std::vector<std::string> s{"all", "noiseless", "noise-after", "noise-before", "perturbation",
                                          "optimality"};
  return s;
}

namespace {

using random::Rng;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Instance {
  ParameterizedModel model;
  RVector theta;
  PureState psi;
  std::vector<CVector> dpsi;
  UsefulSubspace sub;
};

Instance make_instance(Rng& rng, int d, int m) {
  ParameterizedModel model = random::model(rng, d, m);
  RVector theta = random::real_vector(rng, m, -1.0, 1.0);
  PureState psi = evolve(model, theta);
  std::vector<CVector> dpsi = derivative_states(model, theta);
  UsefulSubspace sub = useful_subspace(psi, dpsi);
  return {std::move(model), std::move(theta), std::move(psi), std::move(dpsi), std::move(sub)};
}

/// max |P after - before| relative to the largest |before| entry.
double efficiency_defect(const QFIMatrix& after, const QFIMatrix& before, double prob) {
  return (prob * after - before).cwiseAbs().maxCoeff() / before.cwiseAbs().maxCoeff();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

class Recorder {
 public:
  Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  /// Passes when measured <= tolerance.
  void upper(const std::string& name, double measured, double tol, const std::string& detail = "",
             bool gating = true) {
    out_.push_back({suite_, name, measured <= tol, gating, measured, tol, detail});
  }

  /// Passes when measured >= tolerance.
  void lower(const std::string& name, double measured, double tol, const std::string& detail = "",
             bool gating = true) {
    out_.push_back({suite_, name, measured >= tol, gating, measured, tol, detail});
  }

  void flag(const std::string& name, bool ok, const std::string& detail = "", bool gating = true) {
    out_.push_back({suite_, name, ok, gating, ok ? 1.0 : 0.0, 1.0, detail});
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

void suite_noiseless(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Recorder rec("noiseless", out);
  Rng rng = random::make_rng(o.seed, 1);

  double worst_jal = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const Instance in = make_instance(rng, random::uniform_int(rng, 2, 8), random::uniform_int(rng, 1, 3));
    const QFIMatrix before = qfim_pure(in.psi.vec(), in.dpsi);
    for (double t2 : {0.01, 0.1, 0.5}) {
      const Filter f = jal_filter(in.psi, t2);
      const QFIMatrix after = qfim_pure_postselected(in.psi.vec(), in.dpsi, f.F());
      worst_jal = std::max(worst_jal, efficiency_defect(after, before, f.probability(in.psi.projector())));
    }
  }
  rec.upper("jal_lossless", worst_jal, 1e-8, "max |P*A - 1| over 30 models x 3 t2");

  double worst_opt = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = random::uniform_int(rng, 3, 8);
    const Instance in = make_instance(rng, d, random::uniform_int(rng, 1, std::min(3, d - 2)));
    const double p = random::uniform(rng, 0.05, 0.95);
    CMatrix c_block, d_block;
    random::admissible_blocks(rng, in.sub.u, d, p, c_block, d_block);
    const Filter f = optimal_noiseless_filter(in.sub, p, c_block, d_block);
    const QFIMatrix before = qfim_pure(in.psi.vec(), in.dpsi);
    const QFIMatrix after = qfim_pure_postselected(in.psi.vec(), in.dpsi, f.F());
    const double prob = f.probability(in.psi.projector());
    worst_opt = std::max({worst_opt, efficiency_defect(after, before, prob), std::abs(prob - p)});
  }
  rec.upper("optimal_form_lossless", worst_opt, 1e-10, "random admissible C, D blocks");

  double worst_pm = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Instance in = make_instance(rng, random::uniform_int(rng, 2, 8), random::uniform_int(rng, 1, 3));
    const StateDerivs s = pure_state_derivs(in.psi, in.dpsi);
    const QFIMatrix pure = qfim_pure(in.psi.vec(), in.dpsi);
    const QFIMatrix mixed = qfim_mixed(s.rho, s.drho);
    worst_pm = std::max(worst_pm, (pure - mixed).cwiseAbs().maxCoeff() / pure.cwiseAbs().maxCoeff());
  }
  rec.upper("pure_vs_mixed_qfim", worst_pm, 1e-8);

  double worst_gap = kInf;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = random::uniform_int(rng, 2, 6);
    const Instance in = make_instance(rng, d, random::uniform_int(rng, 1, 3));
    const StateDerivs s = depolarize(pure_state_derivs(in.psi, in.dpsi), random::uniform(rng, 0.0, 0.5));
    const std::vector<CMatrix> e = random::povm(rng, d, random::uniform_int(rng, 2, 5));
    const QFIMatrix q = qfim_mixed(s.rho, s.drho);
    const RMatrix c = classical_fim(e, s.rho, s.drho);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(q - c);
    worst_gap = std::min(worst_gap, es.eigenvalues().minCoeff() / std::max(1.0, q.cwiseAbs().maxCoeff()));
  }
  rec.lower("qfim_dominates_fim", worst_gap, -1e-9, "min eigenvalue of QFIM - FIM");

  {
    Rng mrng = random::make_rng(o.seed, 11);
    const ParameterizedModel model = random::model(mrng, 3, 1);
    const RVector theta = random::real_vector(mrng, 1, -1.0, 1.0);
    const double p_target = 0.3;
    SearchOptions so;
    so.seed = o.seed;
    so.backend = o.backend;
    so.jobs = o.jobs;
    const SearchResult r = brute_force_filter_search(model, theta, 0.0, p_target, so);
    rec.upper("search_below_inverse_p", r.amplification - 1.0 / p_target, 1e-4,
              "d=3 search best " + fmt(r.amplification) + " at P=" + fmt(r.prob));
  }
}

void suite_noise_after(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Recorder rec("noise-after", out);
  Rng rng = random::make_rng(o.seed, 2);
  double worst_ratio = 0.0;
  double worst_pre = 0.0;
  for (double eps : {0.1, 0.5, 0.9}) {
    for (int d : {2, 4, 8}) {
      const Instance in = make_instance(rng, d, 2);
      const LosslessnessReport r = noise_after_losslessness_check(in.model, in.theta, 0.25, eps);
      worst_ratio = std::max(worst_ratio, r.ratio_error);
      worst_pre = std::max(worst_pre, r.prefactor_error);
    }
  }
  rec.upper("ratio_inverse_t2", worst_ratio, 1e-8, "entrywise I(rho^ps,n)/I(rho^n) vs 1/t2");
  rec.upper("noise_prefactor", worst_pre, 1e-8, "I(rho^n)/I(rho) vs (1-eps)^2/(1-eps+2eps/d)");

  double worst_id = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = random::uniform_int(rng, 2, 8);
    const Instance in = make_instance(rng, d, 1);
    const double eps = random::uniform(rng, 0.05, 0.95);
    const Filter f = jal_filter(in.psi, random::uniform(rng, 0.05, 1.0));
    const CMatrix rho = in.psi.projector();
    const CMatrix krk = f.K() * rho * f.K().adjoint();
    const double p = krk.trace().real();
    const CMatrix shown = ((1.0 - eps) * krk + (eps / d) * CMatrix::Identity(d, d)) / ((1.0 - eps) * p + eps);
    const double eps_eff = eps / ((1.0 - eps) * p + eps);
    const DensityMatrix rebuilt = depolarize(DensityMatrix(krk / p), eps_eff);
    worst_id = std::max(worst_id, (shown - rebuilt.mat()).cwiseAbs().maxCoeff());
  }
  rec.upper("effective_strength_identity", worst_id, 1e-12,
            "normalized noisy-after state equals depolarize(rho^ps, eps/((1-eps)P+eps))");
}

void suite_noise_before(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Recorder rec("noise-before", out);
  Rng rng = random::make_rng(o.seed, 3);
  double worst_a = 0.0;
  double worst_eta = 0.0;
  double worst_spread = 0.0;
  const CMatrix none;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = random::uniform_int(rng, 2, 12);
    const int m = trial % 2 == 0 ? 2 : random::uniform_int(rng, 1, 3);
    Instance in = make_instance(rng, d, m);
    const int u = random::uniform_int(rng, in.sub.u, d);
    if (u > in.sub.u) in.sub = enlarge_subspace(in.sub, random::gaussian_matrix(rng, d, d), u);
    const double eps = random::uniform(rng, 0.02, 0.98);
    const DiagonalFilterParams params{random::uniform(rng, 0.05, 1.0), random::uniform(rng, 0.05, 1.0),
                                      random::uniform(rng)};
    const Filter f = diagonal_family_filter(in.sub, params);
    const StateDerivs after = prepare_state(in.model, in.theta, f.K(), eps, NoiseOrder::Before);
    const StateDerivs before = prepare_state(in.model, in.theta, none, eps, NoiseOrder::Before);
    const AmplificationReport r =
        amplification_numeric(qfim_mixed(after.rho, after.drho), qfim_mixed(before.rho, before.drho), after.prob);
    const NoiseGeometry geom(eps, d, u);
    const double a = amplification_noisy_closed(geom, params);
    const double eta = efficiency_noisy_closed(geom, params);
    worst_a = std::max({worst_a, std::abs(r.min_ratio - a) / a, std::abs(r.max_ratio - a) / a});
    worst_eta = std::max({worst_eta, std::abs(after.prob * r.min_ratio - eta) / eta,
                          std::abs(after.prob * r.max_ratio - eta) / eta});
    if (m == 2) worst_spread = std::max(worst_spread, r.spread);
  }
  rec.upper("amplification_closed_form", worst_a, 1e-8, "100 random (eps, d, u, p, B, D)");
  rec.upper("efficiency_closed_form", worst_eta, 1e-8);
  rec.upper("uniform_scaling_m2", worst_spread, 1e-8);

  double worst_t = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = random::uniform_int(rng, 2, 12);
    const NoiseGeometry geom(random::uniform(rng, 0.0, 1.0), d, random::uniform_int(rng, 1, d));
    const double b_val = random::uniform(rng, 0.05, 1.0);
    const double t2 = random::uniform(rng, 0.05, 1.0);
    const double lhs = amplification_t_closed(geom, t2);
    const double rhs = amplification_noisy_closed(geom, {t2 * b_val, b_val, 0.0});
    worst_t = std::max(worst_t, std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs)));
  }
  rec.upper("t_family_reduction", worst_t, 1e-12, "D = 0 family depends on p/B only");
}

void suite_perturbation(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Recorder rec("perturbation", out);
  Rng rng = random::make_rng(o.seed, 4);
  double min_exp = kInf;
  double worst_corr = 0.0;
  double worst_stated = 0.0;
  bool bound_corr = true;
  bool bound_stated = true;
  bool finite_corr = true;
  bool decreased = true;
  for (int trial = 0; trial < 8; ++trial) {
    const Instance in = make_instance(rng, random::uniform_int(rng, 2, 6), random::uniform_int(rng, 1, 3));
    const RVector dir = random::real_vector(rng, in.model.num_params(), -1.0, 1.0).normalized();
    for (double t2 : {0.1, 0.5}) {
      const ExpansionReport e = ps_prob_expansion_check(in.model, in.theta, dir, t2);
      min_exp = std::min(min_exp, e.residual_exponent);
      worst_corr = std::max(worst_corr, std::abs(e.coefficient - e.predicted_corrected) / e.predicted_corrected);
      worst_stated = std::max(worst_stated, std::abs(e.coefficient - e.predicted_stated) / e.predicted_stated);
      const BoundReport b = amplification_bound_check(in.model, in.theta, 0.05 * dir, t2);
      bound_corr = bound_corr && b.fit_holds_corrected;
      bound_stated = bound_stated && b.fit_holds_stated;
      finite_corr = finite_corr && b.holds_corrected;
      decreased = decreased && b.decreased;
    }
  }
  rec.lower("ps_prob_residual_exponent", min_exp, 2.8, "P(delta) - t2 after removing the s^2 term");
  rec.upper("ps_prob_coefficient", worst_corr, 1e-2, "fitted s^2 coefficient vs (1-t2) dI d / 4");
  rec.upper("ps_prob_coefficient_without_quarter", worst_stated, 1e-2,
            "same coefficient compared against (1-t2) dI d", false);
  rec.flag("amplification_bound", bound_corr, "fitted s^2 deficit of A >= that of (1/t2)[1 - ((1-t2)/t2) dI d / 4]");
  rec.flag("amplification_bound_without_quarter", bound_stated, "same against (1/t2)[1 - ((1-t2)/t2) dI d]",
           false);
  rec.flag("amplification_bound_finite_delta", finite_corr,
           "A <= quarter bound + 1e-6 at |delta| = 0.05; third-order terms may exceed it", false);
  rec.flag("amplification_decreases", decreased, "A(delta) <= 1/t2");

  double worst_deriv = 0.0;
  double min_eig_exp = kInf;
  for (int trial = 0; trial < 4; ++trial) {
    const Instance in = make_instance(rng, random::uniform_int(rng, 2, 6), random::uniform_int(rng, 1, 3));
    const InvarianceReport r = first_order_invariance_check(in.model, in.theta, 0.25, 0.3);
    worst_deriv = std::max(worst_deriv, r.max_abs_derivative);
    min_eig_exp = std::min(min_eig_exp, r.eigenvalue_exponent);
  }
  rec.upper("noisy_jal_first_order", worst_deriv, 1e-6, "max |dA_kk/d delta_i| at delta = 0");
  rec.lower("eigenvalue_shift_exponent", min_eig_exp, 1.8, "eigenvalues of rho^n,ps move as |delta|^2");
}

/// Largest gap between the closed-form maximum and any point on an n x n
/// grid adjacent to it, i.e. the resolution of the (p, B) grid near t_pp.
double pp_grid_resolution(const NoiseGeometry& geom, double t2, int n) {
  const double a = amplification_t_closed(geom, t2);
  const double h = 1.0 / n;
  double worst = 0.0;
  if (t2 <= 1.0) {
    for (double r : {t2 - h, t2 + h}) {
      if (r > 0.0) worst = std::max(worst, a - amplification_t_closed(geom, r));
    }
  } else {
    const double b = 1.0 / t2;
    for (double bb : {b - h, b + h}) {
      if (bb > 0.0) worst = std::max(worst, a - amplification_t_closed(geom, 1.0 / bb));
    }
  }
  return worst;
}

void suite_optimality(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Recorder rec("optimality", out);
  Rng rng = random::make_rng(o.seed, 5);

  const int n_pp = 400;
  double worst_pp = -kInf;
  double worst_excess = -kInf;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = random::uniform_int(rng, 2, 12);
    const NoiseGeometry geom(random::uniform(rng, 0.2, 1.0), d, random::uniform_int(rng, 2, d));
    const RegimeSolution s = optimize_pp(geom);
    const GridOptimum g = grid_search_pp(geom, n_pp, o.backend, o.jobs);
    const double a = s.predicted_amplification;
    worst_pp = std::max(worst_pp, (a - g.value) - pp_grid_resolution(geom, s.t2, n_pp));
    worst_excess = std::max(worst_excess, (g.value - a) / a);
  }
  rec.upper("pp_matches_grid", worst_pp, 1e-12, "closed-form gap minus grid resolution");
  rec.upper("pp_not_beaten_by_grid", worst_excess, 1e-12);

  double worst_ds = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = random::uniform_int(rng, 2, 12);
    const NoiseGeometry geom(random::uniform(rng, 0.0, 1.0), d, random::uniform_int(rng, 2, d));
    const double p_max = random::uniform(rng, 0.05, 1.0);
    const RegimeSolution s = optimize_ds(geom, p_max);
    const GridOptimum g = grid_search_ds(geom, p_max, 101, 8, o.backend, o.jobs);
    worst_ds = std::max(worst_ds, std::abs(g.value - s.predicted_efficiency));
  }
  rec.upper("ds_matches_grid", worst_ds, 1e-3, "|eta_grid - eta_closed|");

  {
    const RegimeSolution s = optimize_ds(NoiseGeometry(0.5, 2, 2), 0.2);
    rec.upper("ds_worked_point", std::max(std::abs(s.p_theta - 2.0 / 15.0), std::abs(s.B - 0.4)), 1e-12,
              "d=u=2, eps=0.5, P_max=0.2 -> (2/15, 0.4)");
  }

  bool category_ok = true;
  double min_gain = kInf;
  for (double eps : {0.1, 0.4, 0.7, 1.0}) {
    for (const auto& [d, u] : std::vector<std::pair<int, int>>{{2, 2}, {4, 2}, {10, 5}, {6, 6}}) {
      const NoiseGeometry geom(eps, d, u);
      const double ps = P_star(geom);
      for (int k = 1; k <= 20; ++k) {
        const double pm = k / 20.0;
        const RegimeSolution s = optimize_ds(geom, pm);
        if (s.category != Category::ALL_SIGNAL) category_ok = category_ok && ((pm < ps) == (s.category == Category::DISCARDING));
        min_gain = std::min(min_gain, s.predicted_efficiency - pm);
      }
    }
  }
  rec.flag("ds_category_threshold", category_ok, "DISCARDING iff P_max < P_star");
  rec.lower("ds_beats_naive", min_gain, -1e-12, "eta - P_max");

  {
    // Qubit probe |0>, derivative -i/2 |1>.
    CVector psi0 = CVector::Zero(2);
    psi0(0) = 1.0;
    CMatrix gen = CMatrix::Zero(2, 2);
    gen(0, 1) = gen(1, 0) = 0.5;
    const ParameterizedModel qubit(PureState(psi0), {gen});
    const RVector theta = RVector::Zero(1);
    double worst_q = -kInf;
    double worst_p = 0.0;
    for (double eps : {0.1, 0.5, 0.9}) {
      const NoiseGeometry geom(eps, 2, 2);
      const DensityMatrix rho_n = depolarize(DensityMatrix::from_pure(PureState(psi0)), eps);
      for (int k = 0; k < 3000; ++k) {
        const CVector w = random::gaussian_vector(rng, 2).normalized();
        const QubitFilterParams qp{random::uniform(rng), random::uniform(rng), w(0), w(1)};
        const Filter f = qubit_filter(qp);
        const double prob = f.probability(rho_n.mat());
        worst_p = std::max(worst_p, std::abs(prob - qubit_filter_probability(qp, eps)));
        if (prob < 1e-3 || prob > 1.0 - 1e-9) continue;
        const double a = search_objective(qubit, theta, eps, f);
        worst_q = std::max(worst_q, a - optimize_ds(geom, prob).predicted_amplification);
      }
    }
    rec.upper("qubit_probability_closed_form", worst_p, 1e-12);
    rec.upper("qubit_diagonal_family_optimal", worst_q, 1e-4, "sampled A minus diagonal optimum at equal P");
  }

  {
    const double t2 = 0.25;
    const double alpha2 = 0.25;
    const double t = std::sqrt(t2);
    const double b = std::sqrt(1.0 - t2);
    const double diag = qutrit_info_rate(diag_qutrit_filter(t, 0.5), alpha2, QutritNoiseTerm::Displayed);
    const double off = qutrit_info_rate(offdiag_qutrit_filter(t, b), alpha2, QutritNoiseTerm::Displayed);
    const double off_closed = qutrit_offdiag_rate_closed(t2, alpha2, b);
    rec.upper("qutrit_diagonal_rate", std::abs(diag - 0.375), 1e-8, "rate " + fmt(diag));
    rec.upper("qutrit_offdiag_rate", std::abs(off - off_closed), 1e-8, "rate " + fmt(off));
    rec.lower("qutrit_offdiag_beats_diagonal", off - diag, 1e-12, "mixing gain on the displayed state");
    bool monotone = true;
    double prev = -kInf;
    for (int k = 0; k < 100; ++k) {
      const double bk = b * k / 99.0;
      const double r = qutrit_info_rate(offdiag_qutrit_filter(t, bk), alpha2, QutritNoiseTerm::Displayed);
      monotone = monotone && r > prev;
      prev = r;
    }
    rec.flag("qutrit_rate_monotone_in_b", monotone);
    const double phys = qutrit_info_rate(offdiag_qutrit_filter(t, b), alpha2, QutritNoiseTerm::Physical);
    rec.lower("qutrit_offdiag_gain_physical", phys - diag, 1e-12,
              "noise applied before K: rate " + fmt(phys) + " vs diagonal " + fmt(diag), false);
  }

  {
    // u = 2 inside d = 3: general search against the diagonal family at equal P.
    CVector psi0 = CVector::Zero(3);
    psi0(0) = 1.0;
    CMatrix gen = CMatrix::Zero(3, 3);
    gen(0, 1) = gen(1, 0) = 0.5;
    const ParameterizedModel qutrit(PureState(psi0), {gen});
    const double eps = 0.5;
    const double p_target = 0.3;
    SearchOptions so;
    so.seed = o.seed;
    so.backend = o.backend;
    so.jobs = o.jobs;
    const SearchResult r = brute_force_filter_search(qutrit, RVector::Zero(1), eps, p_target, so);
    const double diag = optimize_ds(NoiseGeometry(eps, 3, 2), r.prob).predicted_amplification;
    rec.lower("search_beats_diagonal_d3", r.amplification - diag, 1e-6,
              "best " + fmt(r.amplification) + " vs diagonal " + fmt(diag) + " at P=" + fmt(r.prob), false);
  }
}

}  // namespace

VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts) {
  static const std::vector<std::pair<std::string, std::function<void(const VerifyOptions&, std::vector<CheckResult>&)>>>
      table{{"noiseless", suite_noiseless},
            {"noise-after", suite_noise_after},
            {"noise-before", suite_noise_before},
            {"perturbation", suite_perturbation},
            {"optimality", suite_optimality}};
  VerifyReport report;
  report.suite = suite;
  report.seed = opts.seed;
  bool found = suite == "all";
  for (const auto& [name, fn] : table) {
    if (suite == "all" || suite == name) {
      found = true;
      fn(opts, report.checks);
    }
  }
  require(found, ErrorCode::InvalidArgument, "unknown verify suite '" + suite + "'");
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"passed", c.passed},
                      {"gating", c.gating},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return {{"suite", report.suite},
          {"seed", report.seed},
          {"passed", report.passed()},
          {"failures", report.failures()},
          {"checks", checks}};
}

}  // namespace psfilter::verify
