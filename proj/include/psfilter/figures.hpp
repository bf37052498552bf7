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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psfilter/kernels.hpp"

namespace psfilter::figures {

enum class SeriesKind {
  AmplificationT,            // amplification vs t2 against the equally noisy state
  MaxAmplificationNoisy,     // max over t vs eps, equally noisy baseline
  MaxAmplificationNoiseless, // max over t vs eps, noiseless baseline
  EfficiencyOptimal,         // detector-saturation optimum vs eps
  EfficiencyNaive,           // P_max * identity vs eps
};

const char* to_string(SeriesKind k) noexcept;
SeriesKind series_kind_from_string(const std::string& s);

struct SeriesSpec {
  std::string label;
  SeriesKind kind;
  double eps = 0.0;  // fixed eps for AmplificationT
  int d = 2;
  int u = 2;
  double p_max = 0.0;  // efficiency series
};

/// Value of a series at abscissa x (t2 or eps depending on the kind).
double evaluate_series(const SeriesSpec& s, double x);

struct FigureOptions {
  std::vector<double> eps_grid{0.01, 0.1, 0.3, 0.5, 0.8};
  std::vector<double> pmax_grid{0.1, 0.3, 0.5, 0.8};
  std::uint64_t seed = 0;
  kernels::Backend backend = kernels::Backend::Serial;
  int jobs = 0;
};

struct Figure {
  std::string panel;
  std::string x_name;
  std::vector<double> x;
  std::vector<SeriesSpec> series;
  std::vector<std::vector<double>> columns;  // one per series, aligned with x
};

const std::vector<std::string>& panels();

Figure make_figure(const std::string& panel, const FigureOptions& opts = {});

std::string to_csv(const Figure& fig);
nlohmann::json sidecar(const Figure& fig, const FigureOptions& opts);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};

CsvTable parse_csv(const std::string& text);
double parse_double(const std::string& cell);

/// Re-evaluates every series of the sidecar at the CSV abscissae and counts
/// cells whose shortest round-trip text differs from the file.
int roundtrip_mismatches(const std::string& csv_text, const nlohmann::json& sidecar_json);

}  // namespace psfilter::figures
