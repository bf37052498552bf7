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

#include "psfilter/figures.hpp"

#include <charconv>
#include <sstream>

#include "psfilter/analysis.hpp"
#include "psfilter/error.hpp"
#include "psfilter/io.hpp"
#include "psfilter/optimize.hpp"

namespace psfilter::figures {

const char* to_string(SeriesKind k) noexcept {
  switch (k) {
    case SeriesKind::AmplificationT: return "amplification_t";
    case SeriesKind::MaxAmplificationNoisy: return "max_amplification_noisy";
    case SeriesKind::MaxAmplificationNoiseless: return "max_amplification_noiseless";
    case SeriesKind::EfficiencyOptimal: return "efficiency_optimal";
    case SeriesKind::EfficiencyNaive: return "efficiency_naive";
  }
  return "unknown";
}

SeriesKind series_kind_from_string(const std::string& s) {
  for (SeriesKind k : {SeriesKind::AmplificationT, SeriesKind::MaxAmplificationNoisy,
                       SeriesKind::MaxAmplificationNoiseless, SeriesKind::EfficiencyOptimal,
                       SeriesKind::EfficiencyNaive}) {
    if (s == to_string(k)) return k;
  }
  fail(ErrorCode::Parse, "unknown series kind '" + s + "'");
}

double evaluate_series(const SeriesSpec& s, double x) {
  switch (s.kind) {
    case SeriesKind::AmplificationT:
      return amplification_t_closed(NoiseGeometry(s.eps, s.d, s.u), x);
    case SeriesKind::MaxAmplificationNoisy:
      return max_amplification(NoiseGeometry(x, s.d, s.u));
    case SeriesKind::MaxAmplificationNoiseless: {
      const NoiseGeometry g(x, s.d, s.u);
      const double f = g.noise_factor();
      return f == 0.0 ? 0.0 : max_amplification(g) * f;
    }
    case SeriesKind::EfficiencyOptimal:
      return optimize_ds(NoiseGeometry(x, s.d, s.u), s.p_max).predicted_efficiency;
    case SeriesKind::EfficiencyNaive:
      if (s.p_max == 0.0) return 0.0;
      return efficiency_noisy_closed(NoiseGeometry(x, s.d, s.u), {s.p_max, s.p_max, s.p_max});
  }
  return 0.0;
}

const std::vector<std::string>& panels() {
  static const std::vector<std::string> p{"3a", "3b", "3c", "3d", "3e", "3f"};
  return p;
}

namespace {

std::string label_eps(double eps, int d, int u) {
  return "eps=" + io::format_double(eps) + "|d=" + std::to_string(d) + "|u=" + std::to_string(u);
}

std::string label_du(int d, int u) { return "d=" + std::to_string(d) + "|u=" + std::to_string(u); }

std::vector<double> grid(int first, int last, double denom, double scale = 1.0) {
  std::vector<double> x;
  for (int i = first; i <= last; ++i) x.push_back(scale * static_cast<double>(i) / denom);
  return x;
}

void add_efficiency_series(Figure& fig, const FigureOptions& opts, int d, int u) {
  for (double pm : opts.pmax_grid) {
    const std::string tag = "Pmax=" + io::format_double(pm) + "|" + label_du(d, u);
    fig.series.push_back({"eta|" + tag, SeriesKind::EfficiencyOptimal, 0.0, d, u, pm});
    fig.series.push_back({"naive|" + tag, SeriesKind::EfficiencyNaive, 0.0, d, u, pm});
  }
}

}  // namespace

Figure make_figure(const std::string& panel, const FigureOptions& opts) {
  Figure fig;
  fig.panel = panel;
  const std::vector<std::pair<int, int>> du_series{{2, 2}, {10, 2}, {10, 5}, {10, 10}};
  if (panel == "3a" || panel == "3b") {
    const bool a = panel == "3a";
    const int d = a ? 2 : 10;
    const int u = a ? 2 : 5;
    fig.x_name = "t2";
    fig.x = a ? grid(1, 1000, 1000.0) : grid(1, 1000, 1000.0, 2.0);
    for (double e : opts.eps_grid) fig.series.push_back({label_eps(e, d, u), SeriesKind::AmplificationT, e, d, u, 0.0});
  } else if (panel == "3c" || panel == "3d") {
    const SeriesKind k = panel == "3c" ? SeriesKind::MaxAmplificationNoisy : SeriesKind::MaxAmplificationNoiseless;
    fig.x_name = "eps";
    // eps = 0 is excluded: the maximum amplification is unbounded there.
    fig.x = grid(1, 200, 200.0);
    for (const auto& [d, u] : du_series) fig.series.push_back({label_du(d, u), k, 0.0, d, u, 0.0});
  } else if (panel == "3e" || panel == "3f") {
    fig.x_name = "eps";
    fig.x = grid(0, 200, 200.0);
    if (panel == "3e") add_efficiency_series(fig, opts, 2, 2);
    add_efficiency_series(fig, opts, 10, 5);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown figure panel '" + panel + "'");
  }
  for (const SeriesSpec& s : fig.series) {
    require(s.eps >= 0.0 && s.eps <= 1.0 && s.p_max >= 0.0 && s.p_max <= 1.0, ErrorCode::InvalidArgument,
            "figure: grid values must lie in [0, 1]");
  }
  const std::int64_t ns = static_cast<std::int64_t>(fig.series.size());
  fig.columns = kernels::parallel_map<std::vector<double>>(
      ns,
      [&](std::int64_t k) {
        std::vector<double> col;
        col.reserve(fig.x.size());
        for (double x : fig.x) col.push_back(evaluate_series(fig.series[static_cast<std::size_t>(k)], x));
        return col;
      },
      opts.backend, opts.jobs);
  return fig;
}

std::string to_csv(const Figure& fig) {
  std::string out = fig.x_name;
  for (const SeriesSpec& s : fig.series) out += "," + s.label;
  out += "\n";
  for (std::size_t r = 0; r < fig.x.size(); ++r) {
    out += io::format_double(fig.x[r]);
    for (const auto& col : fig.columns) out += "," + io::format_double(col[r]);
    out += "\n";
  }
  return out;
}

nlohmann::json sidecar(const Figure& fig, const FigureOptions& opts) {
  nlohmann::json series = nlohmann::json::array();
  for (const SeriesSpec& s : fig.series) {
    series.push_back({{"label", s.label},
                      {"kind", to_string(s.kind)},
                      {"eps", s.eps},
                      {"d", s.d},
                      {"u", s.u},
                      {"p_max", s.p_max}});
  }
  return {{"panel", fig.panel},
          {"tool", "psfilter"},
          {"version", PSFILTER_VERSION},
          {"seed", opts.seed},
          {"x", {{"name", fig.x_name},
                 {"count", fig.x.size()},
                 {"first", fig.x.empty() ? 0.0 : fig.x.front()},
                 {"last", fig.x.empty() ? 0.0 : fig.x.back()}}},
          {"eps_grid", opts.eps_grid},
          {"pmax_grid", opts.pmax_grid},
          {"series", series}};
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      require(cells.size() == t.header.size(), ErrorCode::Parse, "csv: ragged row");
      t.cells.push_back(std::move(cells));
    }
  }
  return t;
}

double parse_double(const std::string& cell) {
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "-inf") return -std::numeric_limits<double>::infinity();
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  require(res.ec == std::errc() && res.ptr == cell.data() + cell.size(), ErrorCode::Parse,
          "csv: cannot parse number '" + cell + "'");
  return v;
}

int roundtrip_mismatches(const std::string& csv_text, const nlohmann::json& sc) {
  const CsvTable t = parse_csv(csv_text);
  std::vector<SeriesSpec> specs;
  for (const auto& s : sc.at("series")) {
    specs.push_back({s.at("label").get<std::string>(), series_kind_from_string(s.at("kind").get<std::string>()),
                     s.at("eps").get<double>(), s.at("d").get<int>(), s.at("u").get<int>(),
                     s.at("p_max").get<double>()});
  }
  require(t.header.size() == specs.size() + 1, ErrorCode::Parse, "csv: header does not match sidecar");
  int bad = 0;
  for (const auto& row : t.cells) {
    const double x = parse_double(row[0]);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      if (t.header[k + 1] != specs[k].label) ++bad;
      if (io::format_double(evaluate_series(specs[k], x)) != row[k + 1]) ++bad;
    }
  }
  return bad;
}

}  // namespace psfilter::figures
