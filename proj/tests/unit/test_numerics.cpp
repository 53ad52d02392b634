// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include <doctest.h>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "chronos/parallel.hpp"
#include "chronos/quadrature.hpp"

using namespace chronos;
using doctest::Approx;

TEST_CASE("doubles print with round-trip precision") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv round trip, plain and compressed") {
  const auto dir = std::filesystem::temp_directory_path() / "chronos_csv_test";
  std::filesystem::create_directories(dir);
  for (const char* name : {"a.csv", "a.csv.gz"}) {
    {
      CsvWriter w(dir / name, {"t", "v"});
      w.row({0.0, 1.0 / 3.0});
      const std::vector<double> r{0.5, -7.25};
      w.row(r);
    }
    const auto rows = read_numeric_csv(dir / name, {"t", "v"});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == 1.0 / 3.0);
    CHECK(rows[1][1] == -7.25);
    CHECK_THROWS_AS(read_numeric_csv(dir / name, {"t", "w"}), ParseError);
  }
  CHECK_THROWS_AS(CsvWriter(dir / "x.csv", {"a"}).row({1.0, 2.0}), Error);
  CHECK_THROWS_AS(read_numeric_csv(dir / "missing.csv", {"t"}), Error);
}

TEST_CASE("parallel_for visits every index once") {
  for (const char* threads : {"1", "4"}) {
    ::setenv("CHRONOS_THREADS", threads, 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  ::setenv("CHRONOS_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  ::unsetenv("CHRONOS_THREADS");
  CHECK(worker_count() >= 1);
  CHECK_THROWS(parallel_for(10, [](std::size_t i) {
    if (i == 7) throw DomainError("boom");
  }));
}

TEST_CASE("quadrature weights") {
  // Odd interval counts close with a 3/8 panel and stay exact for cubics.
  for (std::size_t n : {2u, 3u, 4u, 7u, 10u}) {
    const double h = 1.0 / static_cast<double>(n);
    const RVector w = simpson_weights(n, h);
    double s = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) * h;
      s += w(static_cast<Eigen::Index>(k)) * t * t * t;
    }
    CHECK(s == Approx(0.25).epsilon(1e-14));
  }
  CHECK(trapezoid_weights(4, 0.5).sum() == Approx(2.0));
  const std::vector<double> w{0.5, 0.5}, v{2.0, 4.0};
  CHECK(weighted_sum(w, v) == 3.0);
}
