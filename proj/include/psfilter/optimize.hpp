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
#include <vector>

#include "psfilter/analysis.hpp"
#include "psfilter/filters.hpp"
#include "psfilter/kernels.hpp"
#include "psfilter/model.hpp"

namespace psfilter {

enum class Category { ALL_SIGNAL, COMPRESSING, DISCARDING };

const char* to_string(Category c) noexcept;

struct RegimeSolution {
  double p_theta = 0.0;
  double B = 0.0;
  double t2 = 0.0;
  Category category = Category::COMPRESSING;
  double predicted_amplification = 0.0;
  double predicted_efficiency = 0.0;
  double P_ps = 0.0;
  bool unbounded = false;
  bool degenerate = false;
};

/// Post-processing-dominant optimum: t2 = t_pp^2, p = min(1, t2), B = min(1, 1/t2).
/// Throws UnboundedAmplification at eps = 0; u = 1 is returned flagged degenerate.
RegimeSolution optimize_pp(const NoiseGeometry& geom);

/// Detector-saturation optimum: maximizes efficiency subject to b p + c B <= P_max.
RegimeSolution optimize_ds(const NoiseGeometry& geom, double p_max);

/// Threshold below which the saturation optimum discards signal states.
double P_star(const NoiseGeometry& geom);

struct PathPoint {
  double p_max;
  double p_theta;
  double B;
  Category category;
};

/// optimize_ds sampled at n_points values of P_max from 1 down to 0.
std::vector<PathPoint> optimum_path(const NoiseGeometry& geom, int n_points);

// ---------------------------------------------------------------------------
// Grid-search oracles (serial reference and OpenMP kernels).

struct GridOptimum {
  double p_theta = 0.0;
  double B = 0.0;
  double value = 0.0;
  std::int64_t evaluations = 0;
};

/// max of the D = 0 amplification over an n x n grid of (p, B) in (0, 1]^2.
GridOptimum grid_search_pp(const NoiseGeometry& geom, int n,
                           kernels::Backend backend = kernels::Backend::Serial, int jobs = 0);

/// max efficiency over (p, B) in [0, 1]^2 with b p + c B <= P_max. Each zoom level
/// refines an n x n grid around the previous optimum.
GridOptimum grid_search_ds(const NoiseGeometry& geom, double p_max, int n = 101, int levels = 8,
                           kernels::Backend backend = kernels::Backend::Serial, int jobs = 0);

// ---------------------------------------------------------------------------
// Randomized search over general filters (d <= 4).

struct SearchOptions {
  int restarts = 16;
  int iterations = 600;
  std::uint64_t seed = 1;
  double prob_tol = 1e-3;
  kernels::Backend backend = kernels::Backend::Serial;
  int jobs = 0;
};

struct SearchResult {
  Filter best;
  double amplification;
  double prob;
  std::int64_t evaluations;
};

/// Amplification figure of merit used by the search: the largest ratio over
/// parameter directions of the postselected QFIM (noise before the filter) to
/// the QFIM of the unfiltered noisy state.
double search_objective(const ParameterizedModel& model, const RVector& theta, double eps,
                        const Filter& f);

/// Best-effort lower bound on the achievable amplification at postselection
/// probability P_target. Deterministic per seed and independent of the backend.
SearchResult brute_force_filter_search(const ParameterizedModel& model, const RVector& theta, double eps,
                                       double p_target, const SearchOptions& opts = {});

}  // namespace psfilter
