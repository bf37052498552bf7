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

// psfilter command-line front end.
//
// Exit codes: 0 ok, 1 verify failure, 2 input error, 3 degenerate computation.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "psfilter/analysis.hpp"
#include "psfilter/channels.hpp"
#include "psfilter/error.hpp"
#include "psfilter/figures.hpp"
#include "psfilter/filters.hpp"
#include "psfilter/fisher.hpp"
#include "psfilter/io.hpp"
#include "psfilter/kernels.hpp"
#include "psfilter/optimize.hpp"
#include "psfilter/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace psfilter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::DegeneratePostselection:
    case ErrorCode::SingularFisher:
    case ErrorCode::NonUniformAmplification:
      return kExitDegenerate;
    default:
      return kExitInput;
  }
}

kernels::Backend backend_for(int jobs) { return jobs == 1 ? kernels::Backend::Serial : kernels::Backend::OpenMP; }

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_text_file(out, text);
  }
}

RVector to_rvector(const std::vector<double>& v, int m, const char* what) {
  if (v.empty()) return RVector::Zero(m);
  require(static_cast<int>(v.size()) == m, ErrorCode::DimensionMismatch,
          std::string(what) + " must have M = " + std::to_string(m) + " entries");
  RVector r(m);
  for (int i = 0; i < m; ++i) r(i) = v[static_cast<std::size_t>(i)];
  return r;
}

NoiseOrder parse_order(const std::string& s) {
  if (s == "none") return NoiseOrder::None;
  if (s == "before") return NoiseOrder::Before;
  if (s == "after") return NoiseOrder::After;
  fail(ErrorCode::InvalidArgument, "order must be none, before or after");
}

std::string matrix_csv(const RMatrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += io::format_double(m(r, c));
    }
    out += "\n";
  }
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json solution_json(const RegimeSolution& s) {
  return {{"p_theta", s.p_theta},
          {"B", s.B},
          {"t2", s.t2},
          {"category", to_string(s.category)},
          {"predicted_amplification", s.predicted_amplification},
          {"predicted_efficiency", s.predicted_efficiency},
          {"P_ps", s.P_ps},
          {"unbounded", s.unbounded},
          {"degenerate", s.degenerate}};
}

// ---------------------------------------------------------------------------

struct QfimArgs {
  std::string model;
  std::vector<double> theta;
  std::vector<double> theta0;
  double eps = 0.0;
  std::string filter;
  std::optional<double> jal;
  std::string order = "before";
  std::string baseline = "noisy";
  std::string format = "json";
  std::string out;
};

int cmd_qfim(const QfimArgs& a) {
  const ParameterizedModel model = io::load_model(a.model);
  const int m = model.num_params();
  const RVector theta = to_rvector(a.theta, m, "--theta");
  const RVector theta0 = a.theta0.empty() ? theta : to_rvector(a.theta0, m, "--theta0");
  require(std::isfinite(a.eps) && a.eps >= 0.0 && a.eps <= 1.0, ErrorCode::InvalidArgument,
          "--eps must lie in [0, 1]");
  require(a.filter.empty() || !a.jal, ErrorCode::InvalidArgument, "--filter and --jal are exclusive");
  require(a.baseline == "noisy" || a.baseline == "noiseless", ErrorCode::InvalidArgument,
          "--baseline must be noisy or noiseless");
  require(a.format == "json" || a.format == "csv", ErrorCode::InvalidArgument, "--format must be json or csv");
  const NoiseOrder order = parse_order(a.order);

  std::optional<Filter> filter;
  if (!a.filter.empty()) filter = io::load_filter(a.filter);
  if (a.jal) filter = jal_filter(evolve(model, theta0), *a.jal);
  if (filter) {
    require(filter->dim() == model.dim(), ErrorCode::DimensionMismatch, "filter dimension differs from model");
  }
  const CMatrix kraus = filter ? filter->K() : CMatrix();
  const CMatrix none;

  const StateDerivs after = prepare_state(model, theta, kraus, a.eps, order);
  const double base_eps = a.baseline == "noisy" && order != NoiseOrder::None ? a.eps : 0.0;
  const StateDerivs before = prepare_state(model, theta, none, base_eps, NoiseOrder::Before);
  const QFIMatrix q = qfim_mixed(after.rho, after.drho);
  const QFIMatrix q0 = qfim_mixed(before.rho, before.drho);

  std::optional<AmplificationReport> amp;
  RMatrix ratios = RMatrix::Constant(q.rows(), q.cols(), std::numeric_limits<double>::quiet_NaN());
  const double floor = 1e-9 * std::max(q.cwiseAbs().maxCoeff(), q0.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (std::abs(q0(i, j)) > floor) ratios(i, j) = q(i, j) / q0(i, j);
    }
  }
  if (q0.cwiseAbs().maxCoeff() > 0.0) amp = amplification_numeric(q, q0, after.prob);

  if (a.format == "csv") {
    emit(matrix_csv(q), a.out);
    return kExitOk;
  }
  json j{{"d", model.dim()},
         {"M", m},
         {"theta", a.theta.empty() ? std::vector<double>(static_cast<std::size_t>(m), 0.0) : a.theta},
         {"eps", a.eps},
         {"order", to_string(order)},
         {"filtered", filter.has_value()},
         {"baseline", a.baseline},
         {"postselect_prob", after.prob},
         {"qfim", io::to_json(q)},
         {"baseline_qfim", io::to_json(q0)}};
  json ratio_rows = json::array();
  for (Eigen::Index i = 0; i < ratios.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < ratios.cols(); ++k) {
      row.push_back(std::isnan(ratios(i, k)) ? json(nullptr) : json(ratios(i, k)));
    }
    ratio_rows.push_back(row);
  }
  j["amplification_entries"] = ratio_rows;
  if (amp) {
    j["amplification"] = optional_json(amp->amplification);
    j["efficiency"] = optional_json(amp->efficiency);
    j["uniform"] = amp->uniform;
    j["spread"] = amp->spread;
  } else {
    j["amplification"] = nullptr;
    j["efficiency"] = nullptr;
    j["uniform"] = false;
  }
  emit(j.dump(2) + "\n", a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
  std::string regime = "pp";
  double eps = 0.0;
  int d = 2;
  int u = 2;
  std::optional<double> pmax;
  std::string out;
};

int cmd_optimize(const OptimizeArgs& a) {
  const NoiseGeometry geom(a.eps, a.d, a.u);
  RegimeSolution s;
  if (a.regime == "pp") {
    s = optimize_pp(geom);
  } else if (a.regime == "ds") {
    require(a.pmax.has_value(), ErrorCode::InvalidArgument, "--regime ds requires --pmax");
    s = optimize_ds(geom, *a.pmax);
  } else {
    fail(ErrorCode::InvalidArgument, "--regime must be pp or ds");
  }
  json j = solution_json(s);
  j["regime"] = a.regime;
  j["eps"] = a.eps;
  j["d"] = a.d;
  j["u"] = a.u;
  if (a.pmax) j["P_max"] = *a.pmax;
  j["P_star"] = a.eps > 0.0 ? json(P_star(geom)) : json(nullptr);
  emit(j.dump(2) + "\n", a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct FigureArgs {
  std::string panel;
  std::string out;
  std::vector<double> eps_grid;
  std::vector<double> pmax_grid;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int cmd_figure(const FigureArgs& a) {
  figures::FigureOptions opts;
  if (!a.eps_grid.empty()) opts.eps_grid = a.eps_grid;
  if (!a.pmax_grid.empty()) opts.pmax_grid = a.pmax_grid;
  opts.seed = a.seed;
  opts.backend = backend_for(a.jobs);
  opts.jobs = a.jobs;

  auto write_panel = [&](const std::string& panel, const std::string& csv_path) {
    const figures::Figure fig = figures::make_figure(panel, opts);
    const std::string csv = figures::to_csv(fig);
    if (csv_path.empty()) {
      std::cout << csv;
      return;
    }
    io::write_text_file(csv_path, csv);
    io::write_text_file(csv_path + ".json", figures::sidecar(fig, opts).dump(2) + "\n");
  };

  if (a.panel == "all") {
    require(!a.out.empty(), ErrorCode::InvalidArgument, "--panel all needs --out DIR");
    std::error_code ec;
    fs::create_directories(a.out, ec);
    require(!ec, ErrorCode::InvalidArgument, "cannot create directory '" + a.out + "'");
    for (const std::string& p : figures::panels()) write_panel(p, (fs::path(a.out) / ("fig" + p + ".csv")).string());
    return kExitOk;
  }
  write_panel(a.panel, a.out == "-" ? "" : a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  verify::VerifyOptions opts;
  opts.seed = a.seed;
  opts.backend = backend_for(a.jobs);
  opts.jobs = a.jobs;
  const verify::VerifyReport r = verify::run_verify(a.suite, opts);
  emit(verify::to_json(r).dump(2) + "\n", a.out);
  for (const verify::CheckResult& c : r.checks) {
    if (c.gating && !c.passed) std::cerr << "FAIL " << c.suite << "/" << c.name << ": measured " << c.measured
                                         << ", tolerance " << c.tolerance << "\n";
  }
  return r.passed() ? kExitOk : kExitVerifyFail;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string var = "t2";
  double lo = 0.0;
  double hi = 1.0;
  int n = 101;
  double eps = 0.5;
  int d = 2;
  int u = 2;
  std::optional<double> pmax;
  std::string baseline = "noisy";
  int jobs = 1;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  require(a.lo < a.hi && a.n >= 2, ErrorCode::InvalidArgument, "sweep needs lo < hi and n >= 2");
  require(a.baseline == "noisy" || a.baseline == "noiseless", ErrorCode::InvalidArgument,
          "--baseline must be noisy or noiseless");
  require(a.var == "t2" || a.var == "eps" || a.var == "pmax", ErrorCode::InvalidArgument,
          "--var must be t2, eps or pmax");
  if (a.var == "t2") require(a.lo > 0.0, ErrorCode::InvalidArgument, "t2 sweep needs lo > 0");
  if (a.var != "t2") require(a.lo >= 0.0 && a.hi <= 1.0, ErrorCode::InvalidArgument, "sweep range must lie in [0, 1]");
  const bool noiseless = a.baseline == "noiseless";
  // Validate the fixed values once so that errors surface before the fan-out.
  (void)NoiseGeometry(a.var == "eps" ? a.lo : a.eps, a.d, a.u);
  if (a.pmax) require(*a.pmax >= 0.0 && *a.pmax <= 1.0, ErrorCode::InvalidArgument, "--pmax must lie in [0, 1]");

  std::vector<double> xs;
  for (int i = 0; i < a.n; ++i) xs.push_back(a.lo + (a.hi - a.lo) * i / (a.n - 1));
  const auto rows = kernels::parallel_map<RegimeSolution>(
      a.n,
      [&](std::int64_t i) {
        const double x = xs[static_cast<std::size_t>(i)];
        RegimeSolution s;
        if (a.var == "t2") {
          const NoiseGeometry g(a.eps, a.d, a.u);
          s.t2 = x;
          s.p_theta = std::min(1.0, x);
          s.B = std::min(1.0, 1.0 / x);
          s.predicted_amplification = amplification_t_closed(g, x);
          s.predicted_efficiency = efficiency_noisy_closed(g, {s.p_theta, s.B, 0.0});
          s.P_ps = g.b() * s.p_theta + g.c() * s.B;
          s.category = s.p_theta == 1.0 && s.B == 1.0 ? Category::ALL_SIGNAL : Category::COMPRESSING;
        } else if (a.var == "eps") {
          const NoiseGeometry g(x, a.d, a.u);
          if (a.pmax) {
            s = optimize_ds(g, *a.pmax);
          } else if (x == 0.0) {
            s.unbounded = true;
            s.predicted_amplification = std::numeric_limits<double>::infinity();
          } else {
            s = optimize_pp(g);
          }
        } else {
          s = optimize_ds(NoiseGeometry(a.eps, a.d, a.u), x);
        }
        if (noiseless) {
          const double f = NoiseGeometry(a.var == "eps" ? x : a.eps, a.d, a.u).noise_factor();
          s.predicted_amplification = f == 0.0 ? 0.0 : s.predicted_amplification * f;
          s.predicted_efficiency = f == 0.0 ? 0.0 : s.predicted_efficiency * f;
        }
        return s;
      },
      backend_for(a.jobs), a.jobs);

  std::string csv = a.var + ",p_theta,B,t2,amplification,efficiency,P_ps,category\n";
  for (int i = 0; i < a.n; ++i) {
    const RegimeSolution& s = rows[static_cast<std::size_t>(i)];
    csv += io::format_double(xs[static_cast<std::size_t>(i)]) + "," + io::format_double(s.p_theta) + "," +
           io::format_double(s.B) + "," + io::format_double(s.t2) + "," +
           io::format_double(s.predicted_amplification) + "," + io::format_double(s.predicted_efficiency) + "," +
           io::format_double(s.P_ps) + "," + (s.unbounded ? "UNBOUNDED" : to_string(s.category)) + "\n";
  }
  emit(csv, a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct FilterArgs {
  std::string kind = "jal";
  std::string model;
  std::vector<double> theta;
  double t2 = 0.25;
  std::vector<double> diag;  // p, B, D
  double pmax = 1.0;
  int d = 2;
  std::string out;
};

int cmd_filter(const FilterArgs& a) {
  std::optional<Filter> f;
  if (a.kind == "naive") {
    f = naive_filter(a.d, a.pmax);
  } else {
    require(!a.model.empty(), ErrorCode::InvalidArgument, "--kind " + a.kind + " needs --model");
    const ParameterizedModel model = io::load_model(a.model);
    const RVector theta = to_rvector(a.theta, model.num_params(), "--theta");
    const PureState psi = evolve(model, theta);
    if (a.kind == "jal") {
      f = jal_filter(psi, a.t2);
    } else if (a.kind == "diagonal") {
      require(a.diag.size() == 3, ErrorCode::InvalidArgument, "--params needs p,B,D");
      const UsefulSubspace sub = useful_subspace(psi, derivative_states(model, theta));
      f = diagonal_family_filter(sub, {a.diag[0], a.diag[1], a.diag[2]});
    } else {
      fail(ErrorCode::InvalidArgument, "--kind must be jal, diagonal or naive");
    }
  }
  emit(io::filter_to_json(*f).dump(2) + "\n", a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Postselected quantum metrology under depolarizing noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PSFILTER_VERSION);

  QfimArgs qa;
  auto* qfim = app.add_subcommand("qfim", "QFIM of a model with an optional filter and noise");
  qfim->add_option("--model", qa.model, "model JSON file")->required();
  qfim->add_option("--theta", qa.theta, "parameter values, comma separated")->delimiter(',');
  qfim->add_option("--theta0", qa.theta0, "filter reference point for --jal")->delimiter(',');
  qfim->add_option("--eps", qa.eps, "depolarizing strength");
  qfim->add_option("--filter", qa.filter, "filter JSON file");
  qfim->add_option("--jal", qa.jal, "JAL filter with this t2, built at --theta0");
  qfim->add_option("--order", qa.order, "noise order: none, before, after");
  qfim->add_option("--baseline", qa.baseline, "noisy or noiseless");
  qfim->add_option("--format", qa.format, "json or csv");
  qfim->add_option("--out", qa.out, "output file");

  OptimizeArgs oa;
  auto* opt = app.add_subcommand("optimize", "closed-form optimal diagonal filter");
  opt->add_option("--regime", oa.regime, "pp or ds");
  opt->add_option("--eps", oa.eps)->required();
  opt->add_option("--d", oa.d)->required();
  opt->add_option("--u", oa.u)->required();
  opt->add_option("--pmax", oa.pmax, "postselection cap (ds)");
  opt->add_option("--out", oa.out);

  FigureArgs fa;
  auto* fig = app.add_subcommand("figure", "emit figure data as CSV with a JSON sidecar");
  fig->add_option("--panel", fa.panel, "3a..3f or all")->required();
  fig->add_option("--out", fa.out, "CSV file, or a directory for --panel all");
  fig->add_option("--eps-grid", fa.eps_grid)->delimiter(',');
  fig->add_option("--pmax-grid", fa.pmax_grid)->delimiter(',');
  fig->add_option("--seed", fa.seed);
  fig->add_option("--jobs", fa.jobs, "worker threads (0 = all)");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "run invariant suites and print a JSON report");
  ver->add_option("--suite", va.suite, "all, noiseless, noise-after, noise-before, perturbation, optimality");
  ver->add_option("--seed", va.seed);
  ver->add_option("--jobs", va.jobs);
  ver->add_option("--out", va.out);

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "sweep t2, eps or P_max and print CSV");
  sw->add_option("--var", sa.var, "t2, eps or pmax");
  sw->add_option("--lo", sa.lo);
  sw->add_option("--hi", sa.hi);
  sw->add_option("--n", sa.n);
  sw->add_option("--eps", sa.eps);
  sw->add_option("--d", sa.d);
  sw->add_option("--u", sa.u);
  sw->add_option("--pmax", sa.pmax);
  sw->add_option("--baseline", sa.baseline, "noisy or noiseless");
  sw->add_option("--jobs", sa.jobs);
  sw->add_option("--out", sa.out);

  FilterArgs ta;
  auto* flt = app.add_subcommand("filter", "write a filter JSON file");
  flt->add_option("--kind", ta.kind, "jal, diagonal or naive");
  flt->add_option("--model", ta.model);
  flt->add_option("--theta", ta.theta)->delimiter(',');
  flt->add_option("--t2", ta.t2);
  flt->add_option("--params", ta.diag, "p,B,D for --kind diagonal")->delimiter(',');
  flt->add_option("--pmax", ta.pmax);
  flt->add_option("--d", ta.d);
  flt->add_option("--out", ta.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*qfim) return cmd_qfim(qa);
    if (*opt) return cmd_optimize(oa);
    if (*fig) return cmd_figure(fa);
    if (*ver) return cmd_verify(va);
    if (*sw) return cmd_sweep(sa);
    if (*flt) return cmd_filter(ta);
  } catch (const Error& e) {
    std::cerr << "psfilter: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "psfilter: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
