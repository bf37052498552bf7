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

#include <string>

#include <nlohmann/json.hpp>

#include "psfilter/filters.hpp"
#include "psfilter/model.hpp"

namespace psfilter::io {

using nlohmann::json;

/// Complex numbers are [re, im] pairs. Matrices are written as a flat row-major
/// list of pairs; nested row lists are also accepted on input.
json to_json(cplx z);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const RMatrix& m);  // nested rows of reals

cplx complex_from_json(const json& j);
CVector vector_from_json(const json& j, Eigen::Index expected_size = -1);
CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols);

/// {"d", "M", "psi0", "generators"}
json model_to_json(const ParameterizedModel& model);
ParameterizedModel model_from_json(const json& j);
ParameterizedModel load_model(const std::string& path);

/// {"F", "K"}; an input with only one of the two is completed (K = sqrt F, F = K^dagger K).
json filter_to_json(const Filter& f);
Filter filter_from_json(const json& j);
Filter load_filter(const std::string& path);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

}  // namespace psfilter::io
