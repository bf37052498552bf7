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

namespace psfilter::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Diagnostic checks are reported but do not decide the suite outcome.
  bool gating = true;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  kernels::Backend backend = kernels::Backend::Serial;
  int jobs = 0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  /// True iff every gating check passed.
  bool passed() const noexcept;
  int failures() const noexcept;
};

/// all, noiseless, noise-after, noise-before, perturbation, optimality
const std::vector<std::string>& suites();

VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts = {});

nlohmann::json to_json(const VerifyReport& report);

}  // namespace psfilter::verify
