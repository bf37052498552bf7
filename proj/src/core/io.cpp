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

#include "psfilter/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "psfilter/error.hpp"

namespace psfilter::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
  }
  return out;
}

json to_json(const RMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorCode::Parse, "expected a complex number as [re, im], got " + j.dump());
  }
  const cplx z(j[0].get<double>(), j[1].get<double>());
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::NonFinite,
          "non-finite complex entry");
  return z;
}

CVector vector_from_json(const json& j, Eigen::Index expected_size) {
  require(j.is_array(), ErrorCode::Parse, "expected an array of [re, im] pairs");
  if (expected_size >= 0) {
    require(static_cast<Eigen::Index>(j.size()) == expected_size, ErrorCode::DimensionMismatch,
            "vector has " + std::to_string(j.size()) + " entries, expected " + std::to_string(expected_size));
  }
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  require(j.is_array(), ErrorCode::Parse, "expected a matrix as an array");
  CMatrix m(rows, cols);
  const bool nested = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested) {
    require(static_cast<Eigen::Index>(j.size()) == rows, ErrorCode::DimensionMismatch,
            "matrix has the wrong number of rows");
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = j[static_cast<std::size_t>(r)];
      require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, ErrorCode::DimensionMismatch,
              "matrix row has the wrong number of entries");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  require(static_cast<Eigen::Index>(j.size()) == rows * cols, ErrorCode::DimensionMismatch,
          "matrix has " + std::to_string(j.size()) + " entries, expected " + std::to_string(rows * cols));
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j[static_cast<std::size_t>(r * cols + c)]);
    }
  }
  return m;
}

json model_to_json(const ParameterizedModel& model) {
  json gens = json::array();
  for (const CMatrix& g : model.generators()) gens.push_back(to_json(g));
  return {{"d", model.dim()},
          {"M", model.num_params()},
          {"psi0", to_json(model.psi0().vec())},
          {"generators", gens}};
}

ParameterizedModel model_from_json(const json& j) {
  require(j.is_object(), ErrorCode::Parse, "model: expected a JSON object");
  for (const char* key : {"d", "M", "psi0", "generators"}) {
    require(j.contains(key), ErrorCode::Parse, std::string("model: missing field '") + key + "'");
  }
  require(j["d"].is_number_integer() && j["M"].is_number_integer(), ErrorCode::Parse,
          "model: 'd' and 'M' must be integers");
  const Eigen::Index d = j["d"].get<Eigen::Index>();
  const int m = j["M"].get<int>();
  require(d >= 1 && m >= 1, ErrorCode::InvalidArgument, "model: d and M must be positive");
  require(j["generators"].is_array() && static_cast<int>(j["generators"].size()) == m,
          ErrorCode::DimensionMismatch, "model: number of generators differs from M");
  const CVector psi = vector_from_json(j["psi0"], d);
  std::vector<CMatrix> gens;
  for (const json& g : j["generators"]) gens.push_back(matrix_from_json(g, d, d));
  return ParameterizedModel(PureState::normalized(psi), std::move(gens));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Parse, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, "malformed JSON in '" + path + "': " + e.what());
  }
}

ParameterizedModel load_model(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return model_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, "model '" + path + "': " + e.what());
  }
}

json filter_to_json(const Filter& f) {
  return {{"d", f.dim()}, {"F", to_json(f.F())}, {"K", to_json(f.K())}};
}

Filter filter_from_json(const json& j) {
  require(j.is_object(), ErrorCode::Parse, "filter: expected a JSON object");
  require(j.contains("F") || j.contains("K"), ErrorCode::Parse, "filter: need 'F' or 'K'");
  const json& any = j.contains("F") ? j["F"] : j["K"];
  require(any.is_array() && !any.empty(), ErrorCode::Parse, "filter: empty matrix");
  Eigen::Index d;
  if (j.contains("d")) {
    d = j["d"].get<Eigen::Index>();
  } else if (any[0].is_array() && !any[0].empty() && any[0][0].is_array()) {
    d = static_cast<Eigen::Index>(any.size());
  } else {
    d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(any.size()))));
  }
  if (j.contains("F") && j.contains("K")) {
    return Filter(matrix_from_json(j["F"], d, d), matrix_from_json(j["K"], d, d));
  }
  if (j.contains("F")) return Filter::from_povm_element(matrix_from_json(j["F"], d, d));
  return Filter::from_kraus(matrix_from_json(j["K"], d, d));
}

Filter load_filter(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return filter_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, "filter '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
  require(static_cast<bool>(out), ErrorCode::InvalidArgument, "write failed for '" + path + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace psfilter::io
