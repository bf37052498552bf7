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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "helpers.hpp"
#include "psfilter/analysis.hpp"
#include "psfilter/figures.hpp"
#include "psfilter/io.hpp"
#include "psfilter/random.hpp"

using namespace psfilter;
using namespace testing;
using doctest::Approx;
using kernels::Backend;

namespace {

std::size_t column_of(const figures::Figure& f, const std::string& label) {
  for (std::size_t k = 0; k < f.series.size(); ++k) {
    if (f.series[k].label == label) return k;
  }
  FAIL("no series " << label);
  return 0;
}

}  // namespace

TEST_CASE("figure shapes") {
  for (const std::string& p : figures::panels()) {
    const figures::Figure f = figures::make_figure(p);
    CHECK(f.panel == p);
    REQUIRE(f.columns.size() == f.series.size());
    for (const auto& col : f.columns) CHECK(col.size() == f.x.size());
    for (const auto& col : f.columns) {
      for (double v : col) CHECK(std::isfinite(v));
    }
  }
  CHECK(figures::make_figure("3a").series.size() == 5);
  CHECK(figures::make_figure("3a").x.size() == 1000);
  CHECK(figures::make_figure("3b").x.back() == 2.0);
  CHECK(figures::make_figure("3c").x.front() == 0.005);
  CHECK(figures::make_figure("3e").series.size() == 16);
  CHECK(figures::make_figure("3f").series.size() == 8);
  CHECK(figures::make_figure("3f").x.front() == 0.0);
  CHECK(error_of([] { figures::make_figure("4a"); }) == ErrorCode::InvalidArgument);
  figures::FigureOptions bad;
  bad.eps_grid = {1.5};
  CHECK(error_of([&] { figures::make_figure("3a", bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("figure endpoints") {
  // No filtering at t2 = 1, and d = u = 2 has b + c = b + g = 1.
  const figures::Figure a = figures::make_figure("3a");
  for (const auto& col : a.columns) CHECK(col[999] == Approx(1.0).epsilon(1e-14));

  // eps = 1: largest amplification is 2d / (1 + sqrt(u - 1))^2, noiseless baseline vanishes.
  const figures::Figure c = figures::make_figure("3c");
  const figures::Figure d = figures::make_figure("3d");
  for (std::size_t k = 0; k < c.series.size(); ++k) {
    const double dd = c.series[k].d;
    const double uu = c.series[k].u;
    const double expect = 2.0 * dd / std::pow(1.0 + std::sqrt(uu - 1.0), 2.0);
    CHECK(c.columns[k].back() == Approx(expect).epsilon(1e-9));
    CHECK(d.columns[k].back() == 0.0);
  }
  CHECK(c.columns[column_of(c, "d=2|u=2")].back() == Approx(1.0).epsilon(1e-9));
  CHECK(c.columns[column_of(c, "d=10|u=2")].back() == Approx(5.0).epsilon(1e-9));

  // Identity filter efficiency is P_max at every eps; the noiseless optimum is lossless.
  const figures::Figure e = figures::make_figure("3e");
  for (std::size_t k = 0; k < e.series.size(); ++k) {
    const figures::SeriesSpec& s = e.series[k];
    if (s.kind == figures::SeriesKind::EfficiencyNaive) {
      for (double v : e.columns[k]) CHECK(v == Approx(s.p_max).epsilon(1e-12));
    } else {
      CHECK(e.columns[k].front() == Approx(1.0).epsilon(1e-12));
      for (double v : e.columns[k]) CHECK(v >= s.p_max - 1e-12);
    }
  }
}

TEST_CASE("figure output is deterministic") {
  figures::FigureOptions omp;
  omp.backend = Backend::OpenMP;
  omp.jobs = 3;
  for (const std::string& p : figures::panels()) {
    const std::string once = figures::to_csv(figures::make_figure(p));
    CHECK(once == figures::to_csv(figures::make_figure(p)));
    CHECK(once == figures::to_csv(figures::make_figure(p, omp)));
    CHECK(figures::sidecar(figures::make_figure(p), {}).dump() == figures::sidecar(figures::make_figure(p), {}).dump());
  }
}

TEST_CASE("figure round trip") {
  for (const std::string& p : figures::panels()) {
    const figures::FigureOptions opts;
    const figures::Figure f = figures::make_figure(p, opts);
    const std::string csv = figures::to_csv(f);
    const nlohmann::json sc = nlohmann::json::parse(figures::sidecar(f, opts).dump());
    CHECK(figures::roundtrip_mismatches(csv, sc) == 0);
    CHECK(sc.at("series").size() == f.series.size());
    CHECK(sc.at("x").at("count").get<std::size_t>() == f.x.size());

    const figures::CsvTable t = figures::parse_csv(csv);
    CHECK(t.cells.size() == f.x.size());
    for (std::size_t r = 0; r < f.x.size(); r += 97) {
      CHECK(figures::parse_double(t.cells[r][0]) == f.x[r]);
      for (std::size_t k = 0; k < f.series.size(); ++k) {
        CHECK(figures::parse_double(t.cells[r][k + 1]) == f.columns[k][r]);
      }
    }
  }
  const figures::Figure f = figures::make_figure("3c");
  std::string csv = figures::to_csv(f);
  const std::size_t pos = csv.find('\n') + 1;
  csv.insert(csv.find(',', pos) + 1, "9");
  CHECK(figures::roundtrip_mismatches(csv, figures::sidecar(f, {})) == 1);
  CHECK(error_of([] { figures::parse_csv("a,b\n1\n"); }) == ErrorCode::Parse);
  CHECK(error_of([] { figures::parse_double("1.0x"); }) == ErrorCode::Parse);
  CHECK(error_of([] { figures::series_kind_from_string("bogus"); }) == ErrorCode::Parse);
}

TEST_CASE("format_double") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5) == "-2.5");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(std::nan("")) == "nan");
  random::Rng rng = random::make_rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(random::uniform(rng, -1.0, 1.0), random::uniform_int(rng, -300, 300));
    CHECK(figures::parse_double(io::format_double(x)) == x);
  }
}

TEST_CASE("model json") {
  random::Rng rng = random::make_rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = random::uniform_int(rng, 2, 5);
    const int m = random::uniform_int(rng, 1, 3);
    std::vector<CMatrix> gens;
    for (int k = 0; k < m; ++k) gens.push_back(random::hermitian(rng, d));
    const ParameterizedModel model(PureState::normalized(random::gaussian_vector(rng, d)), gens);
    const ParameterizedModel back = io::model_from_json(nlohmann::json::parse(io::model_to_json(model).dump()));
    CHECK(back.dim() == d);
    REQUIRE(back.num_params() == m);
    CHECK((back.psi0().vec() - model.psi0().vec()).norm() < 1e-15);
    for (int k = 0; k < m; ++k) CHECK((back.generator(k) - model.generator(k)).norm() == 0.0);
  }

  const auto nested = nlohmann::json::parse(
      R"({"d": 2, "M": 1, "psi0": [[1, 0], [0, 0]], "generators": [[[[0, 0], [0, -0.5]], [[0, 0.5], [0, 0]]]]})");
  const ParameterizedModel q = io::model_from_json(nested);
  CHECK((q.generator(0) - 0.5 * pauli_y()).norm() == 0.0);
  const auto unnormalized = nlohmann::json::parse(R"({"d": 2, "M": 1, "psi0": [3, 4], "generators": [[1, 0, 0, 0]]})");
  CHECK(io::model_from_json(unnormalized).psi0().vec()(1).real() == Approx(0.8).epsilon(1e-15));

  CHECK(error_of([] { io::model_from_json(nlohmann::json::parse(R"({"d": 2, "M": 1, "psi0": [1, 0]})")); }) ==
        ErrorCode::Parse);
  CHECK(error_of([] {
          io::model_from_json(nlohmann::json::parse(R"({"d": 2, "M": 2, "psi0": [1, 0], "generators": [[1, 0, 0, 0]]})"));
        }) == ErrorCode::DimensionMismatch);
  CHECK(error_of([] {
          io::model_from_json(nlohmann::json::parse(R"({"d": 2, "M": 1, "psi0": [1, 0, 0], "generators": [[1, 0, 0, 0]]})"));
        }) == ErrorCode::DimensionMismatch);
  CHECK(error_of([] { io::complex_from_json(nlohmann::json::parse(R"([1, 2, 3])")); }) == ErrorCode::Parse);
  CHECK(error_of([] { io::complex_from_json(nlohmann::json::parse(R"("x")")); }) == ErrorCode::Parse);
  CHECK(error_of([] { io::read_json_file("/nonexistent/model.json"); }) == ErrorCode::Parse);
}

TEST_CASE("filter json") {
  random::Rng rng = random::make_rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = random::uniform_int(rng, 2, 4);
    const CMatrix k = random::gaussian_matrix(rng, d, d);
    const Eigen::JacobiSVD<CMatrix> svd(k);
    const Filter f = Filter::from_kraus(k / (1.01 * svd.singularValues()(0)));
    const Filter back = io::filter_from_json(nlohmann::json::parse(io::filter_to_json(f).dump()));
    CHECK((back.K() - f.K()).norm() == 0.0);
    CHECK((back.F() - f.F()).norm() == 0.0);

    nlohmann::json only_k = io::filter_to_json(f);
    only_k.erase("F");
    CHECK((io::filter_from_json(only_k).F() - f.F()).norm() < 1e-14);
    nlohmann::json only_f = io::filter_to_json(f);
    only_f.erase("K");
    only_f.erase("d");
    const Filter from_f = io::filter_from_json(only_f);
    CHECK((from_f.K().adjoint() * from_f.K() - f.F()).norm() < 1e-12);
  }
  CHECK(error_of([] { io::filter_from_json(nlohmann::json::parse(R"({"d": 2})")); }) == ErrorCode::Parse);
  CHECK(error_of([] { io::filter_from_json(nlohmann::json::parse(R"({"F": [2, 0, 0, 1]})")); }) ==
        ErrorCode::InvalidFilter);
}
