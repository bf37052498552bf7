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

#include "psfilter/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psfilter/channels.hpp"
#include "psfilter/error.hpp"
#include "psfilter/random.hpp"

namespace psfilter {

const char* to_string(Category c) noexcept {
  switch (c) {
    case Category::ALL_SIGNAL: return "ALL_SIGNAL";
    case Category::COMPRESSING: return "COMPRESSING";
    case Category::DISCARDING: return "DISCARDING";
  }
  return "unknown";
}

namespace {

void fill_predictions(const NoiseGeometry& geom, RegimeSolution& s) {
  s.P_ps = geom.b() * s.p_theta + geom.c() * s.B;
  if (s.B > 0.0) {
    const DiagonalFilterParams fp{s.p_theta, s.B, 0.0};
    s.predicted_amplification = amplification_noisy_closed(geom, fp);
    s.predicted_efficiency = efficiency_noisy_closed(geom, fp);
  } else {
    s.predicted_amplification = 0.0;
    s.predicted_efficiency = 0.0;
  }
}

}  // namespace

RegimeSolution optimize_pp(const NoiseGeometry& geom) {
  const TppResult tp = t_pp(geom);
  if (tp.unbounded) {
    fail(ErrorCode::UnboundedAmplification,
         "optimize_pp: amplification is unbounded without noise (eps = 0)");
  }
  RegimeSolution s;
  if (tp.degenerate) {
    s.degenerate = true;
    s.t2 = 0.0;
    s.p_theta = 0.0;
    s.B = 1.0;
    s.category = Category::DISCARDING;
    fill_predictions(geom, s);
    s.predicted_amplification = max_amplification(geom);
    return s;
  }
  s.t2 = tp.t2;
  s.p_theta = std::min(1.0, tp.t2);
  s.B = std::min(1.0, 1.0 / tp.t2);
  fill_predictions(geom, s);
  s.category = s.P_ps >= geom.b() + geom.c() ? Category::ALL_SIGNAL : Category::COMPRESSING;
  return s;
}

double P_star(const NoiseGeometry& geom) {
  const TppResult tp = t_pp(geom);
  require(!tp.unbounded, ErrorCode::UnboundedAmplification, "P_star: undefined at eps = 0");
  if (tp.degenerate) return 0.0;
  return geom.b() * std::min(1.0, tp.t2) + geom.c() * std::min(1.0, 1.0 / tp.t2);
}

RegimeSolution optimize_ds(const NoiseGeometry& geom, double p_max) {
  require(std::isfinite(p_max) && p_max >= 0.0 && p_max <= 1.0, ErrorCode::InvalidArgument,
          "optimize_ds: P_max must lie in [0, 1]");
  const double b = geom.b();
  const double c = geom.c();
  RegimeSolution s;
  if (p_max >= b + c) {
    s.p_theta = 1.0;
    s.B = 1.0;
    s.t2 = 1.0;
    s.category = Category::ALL_SIGNAL;
    fill_predictions(geom, s);
    return s;
  }
  if (p_max == 0.0) {
    s.degenerate = true;
    s.category = Category::DISCARDING;
    fill_predictions(geom, s);
    return s;
  }
  const TppResult tp = t_pp(geom);
  // eps = 0 and u = 1 both give t_pp = 0, which the lower clamp handles.
  const double tpp2 = tp.t2;
  double t2;
  if (tpp2 <= 1.0) {
    t2 = std::max(tpp2, (p_max - c) / b);
  } else if (p_max > b) {
    t2 = std::min(tpp2, c / (p_max - b));
  } else {
    t2 = tpp2;
  }
  s.t2 = t2;
  s.p_theta = std::min(1.0, p_max / (b + c / t2));
  s.B = std::min(1.0, p_max / (b * t2 + c));
  s.unbounded = tp.unbounded;
  s.degenerate = tp.degenerate;
  const double pstar = b * std::min(1.0, tpp2) + c * (tpp2 > 0.0 ? std::min(1.0, 1.0 / tpp2) : 1.0);
  s.category = p_max < pstar ? Category::DISCARDING : Category::COMPRESSING;
  fill_predictions(geom, s);
  return s;
}

std::vector<PathPoint> optimum_path(const NoiseGeometry& geom, int n_points) {
  require(n_points >= 2, ErrorCode::InvalidArgument, "optimum_path: need at least two points");
  std::vector<PathPoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double pm = 1.0 - static_cast<double>(i) / (n_points - 1);
    const RegimeSolution s = optimize_ds(geom, pm);
    out.push_back({pm, s.p_theta, s.B, s.category});
  }
  return out;
}

GridOptimum grid_search_pp(const NoiseGeometry& geom, int n, kernels::Backend backend, int jobs) {
  require(n >= 2, ErrorCode::InvalidArgument, "grid_search_pp: n must be at least 2");
  const std::int64_t nn = static_cast<std::int64_t>(n) * n;
  const double b = geom.b();
  const double c = geom.c();
  const double g = geom.g();
  const double lead = 1.0 - geom.eps + 2.0 * g;
  auto value = [&](std::int64_t k) {
    const double p = static_cast<double>(k / n + 1) / n;
    const double bb = static_cast<double>(k % n + 1) / n;
    const double r = p / bb;
    return lead * r / ((b * r + c) * (b * r + g));
  };
  const kernels::ArgMax best = kernels::argmax_range(nn, value, backend, jobs);
  GridOptimum out;
  out.p_theta = static_cast<double>(best.index / n + 1) / n;
  out.B = static_cast<double>(best.index % n + 1) / n;
  out.value = best.value;
  out.evaluations = nn;
  return out;
}

GridOptimum grid_search_ds(const NoiseGeometry& geom, double p_max, int n, int levels,
                           kernels::Backend backend, int jobs) {
  require(n >= 3 && levels >= 1, ErrorCode::InvalidArgument, "grid_search_ds: need n >= 3, levels >= 1");
  const double b = geom.b();
  const double c = geom.c();
  const double g = geom.g();
  const double lead = 1.0 - geom.eps + 2.0 * g;
  double p_lo = 0.0, p_hi = 1.0, b_lo = 0.0, b_hi = 1.0;
  GridOptimum out;
  for (int level = 0; level < levels; ++level) {
    const double dp = (p_hi - p_lo) / (n - 1);
    const double db = (b_hi - b_lo) / (n - 1);
    // Infeasible grid points are scaled radially onto the constraint line, so the
    // boundary is sampled at grid resolution.
    auto point = [&](std::int64_t k, double& p, double& bb) {
      p = p_lo + dp * static_cast<double>(k / n);
      bb = b_lo + db * static_cast<double>(k % n);
      const double load = b * p + c * bb;
      if (load > p_max) {
        p *= p_max / load;
        bb *= p_max / load;
      }
    };
    auto value = [&](std::int64_t k) {
      double p, bb;
      point(k, p, bb);
      if (bb <= 0.0 || p <= 0.0) return 0.0;
      return lead * p / (b * p / bb + g);
    };
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    const kernels::ArgMax best = kernels::argmax_range(nn, value, backend, jobs);
    out.evaluations += nn;
    if (best.index < 0) break;
    double p, bb;
    point(best.index, p, bb);
    if (level == 0 || best.value >= out.value) {
      out.p_theta = p;
      out.B = bb;
      out.value = best.value;
    }
    p_lo = std::max(0.0, out.p_theta - 10.0 * dp);
    p_hi = std::min(1.0, out.p_theta + 10.0 * dp);
    b_lo = std::max(0.0, out.B - 10.0 * db);
    b_hi = std::min(1.0, out.B + 10.0 * db);
  }
  return out;
}

double search_objective(const ParameterizedModel& model, const RVector& theta, double eps,
                        const Filter& f) {
  const StateDerivs ps = prepare_state(model, theta, f.K(), eps, NoiseOrder::Before);
  const StateDerivs base = prepare_state(model, theta, CMatrix(), eps, NoiseOrder::Before);
  return max_directional_amplification(qfim_mixed(ps.rho, ps.drho), qfim_mixed(base.rho, base.drho));
}

namespace {

struct SearchContext {
  const ParameterizedModel& model;
  const RVector& theta;
  double eps;
  double p_target;
  CMatrix rho_in;
  std::vector<CMatrix> drho_in;
  QFIMatrix baseline;
};

// Effect operator from unconstrained coordinates, then moved exactly onto the
// slice Tr[F rho_in] = p_target.
CMatrix effect_from_coords(const RVector& x, Eigen::Index d, const CMatrix& rho_in, double p_target) {
  RVector spec(d);
  for (Eigen::Index i = 0; i < d; ++i) spec(i) = 1.0 / (1.0 + std::exp(-x(i)));
  CMatrix h = CMatrix::Zero(d, d);
  Eigen::Index k = d;
  for (Eigen::Index r = 0; r < d; ++r) {
    h(r, r) = x(k++);
    for (Eigen::Index c = r + 1; c < d; ++c) {
      const cplx v(x(k), x(k + 1));
      k += 2;
      h(r, c) = v;
      h(c, r) = std::conj(v);
    }
  }
  const CMatrix v = linalg::expm_minus_i(h);
  CMatrix f = v * spec.cast<cplx>().asDiagonal() * v.adjoint();
  f = linalg::hermitian_part(f);
  const double p = (f * rho_in).trace().real();
  if (p > p_target) {
    f *= p_target / p;
  } else if (p < p_target) {
    const double lam = (p_target - p) / (1.0 - p);
    f = (1.0 - lam) * f + lam * CMatrix::Identity(d, d);
  }
  return f;
}

double evaluate(const SearchContext& ctx, const CMatrix& f) {
  const CMatrix k = linalg::sqrt_psd(f);
  StateDerivs s;
  s.rho = ctx.rho_in;
  s.drho = ctx.drho_in;
  s.dprob.assign(ctx.drho_in.size(), 0.0);
  const StateDerivs ps = postselect(s, k);
  return max_directional_amplification(qfim_mixed(ps.rho, ps.drho), ctx.baseline);
}

struct RestartResult {
  CMatrix f;
  double value = -std::numeric_limits<double>::infinity();
  std::int64_t evaluations = 0;
};

RestartResult run_restart(const SearchContext& ctx, const SearchOptions& opts, int restart) {
  const Eigen::Index d = ctx.model.dim();
  const Eigen::Index nx = d + d * d;
  random::Rng rng = random::make_rng(opts.seed, static_cast<std::uint64_t>(restart));
  std::normal_distribution<double> gauss(0.0, 1.0);
  RVector x(nx);
  for (Eigen::Index i = 0; i < nx; ++i) x(i) = (i < d ? 2.0 : 1.0) * gauss(rng);

  RestartResult out;
  CMatrix f = effect_from_coords(x, d, ctx.rho_in, ctx.p_target);
  double cur = evaluate(ctx, f);
  out.f = f;
  out.value = cur;
  out.evaluations = 1;
  const double scale = std::max(1.0, std::abs(cur));
  for (int it = 0; it < opts.iterations; ++it) {
    const double frac = static_cast<double>(it) / std::max(1, opts.iterations);
    const double sigma = 0.6 * (1.0 - frac) + 0.01;
    const double temp = 0.02 * scale * (1.0 - frac) + 1e-12;
    RVector y = x;
    // Perturb a random subset of coordinates so late steps stay local.
    for (Eigen::Index i = 0; i < nx; ++i) {
      if (random::uniform(rng) < 0.5) y(i) += sigma * gauss(rng);
    }
    const CMatrix fy = effect_from_coords(y, d, ctx.rho_in, ctx.p_target);
    double vy;
    try {
      vy = evaluate(ctx, fy);
    } catch (const Error&) {
      continue;
    }
    ++out.evaluations;
    const double accept = random::uniform(rng);
    if (vy >= cur || accept < std::exp((vy - cur) / temp)) {
      x = y;
      cur = vy;
    }
    if (vy > out.value) {
      out.value = vy;
      out.f = fy;
    }
  }
  return out;
}

}  // namespace

SearchResult brute_force_filter_search(const ParameterizedModel& model, const RVector& theta, double eps,
                                       double p_target, const SearchOptions& opts) {
  require(model.dim() <= 4, ErrorCode::InvalidArgument, "brute_force_filter_search: requires d <= 4");
  require(std::isfinite(p_target) && p_target > 0.0 && p_target <= 1.0, ErrorCode::InvalidArgument,
          "brute_force_filter_search: P_target must lie in (0, 1]");
  require(opts.restarts >= 1 && opts.iterations >= 0, ErrorCode::InvalidArgument,
          "brute_force_filter_search: need at least one restart");
  const StateDerivs base = prepare_state(model, theta, CMatrix(), eps, NoiseOrder::Before);
  SearchContext ctx{model, theta, eps, p_target, base.rho, base.drho, qfim_mixed(base.rho, base.drho)};

  const std::vector<RestartResult> runs = kernels::parallel_map<RestartResult>(
      opts.restarts, [&](std::int64_t r) { return run_restart(ctx, opts, static_cast<int>(r)); },
      opts.backend, opts.jobs);

  std::size_t best = 0;
  std::int64_t evals = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    evals += runs[r].evaluations;
    if (runs[r].value > runs[best].value) best = r;
  }
  const Filter f = Filter::from_povm_element(runs[best].f);
  const double prob = f.probability(base.rho);
  require(std::abs(prob - p_target) <= opts.prob_tol, ErrorCode::InvalidFilter,
          "brute_force_filter_search: best filter left the probability slice");
  return {f, runs[best].value, prob, evals};
}

}  // namespace psfilter
