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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "chronos/errors.hpp"
#include "chronos/goodness_of_fit.hpp"
#include "oracles.hpp"

using namespace chronos;
using doctest::Approx;

TEST_CASE("ks statistic of a hand-checked sample") {
  // Uniform cdf; sorted sample 0.1, 0.4, 0.9: max gap is 2/3 - 0.4 = 0.2667.
  const double d = ks_statistic({0.9, 0.1, 0.4}, [](double t) { return t; });
  CHECK(d == Approx(2.0 / 3.0 - 0.4));
  CHECK_THROWS_AS(ks_statistic({}, [](double t) { return t; }), DomainError);
}

TEST_CASE("ks critical value") {
  // Asymptotic 1% point 1.6276 divided by sqrt(n) for large n.
  CHECK(ks_critical_value(1000000, 0.01) * 1000.0 == Approx(1.6276).epsilon(1e-3));
  CHECK(ks_critical_value(100, 0.05) == Approx(1.3581 / (10.0 + 0.12 + 0.011)).epsilon(1e-3));
  CHECK_THROWS_AS(ks_critical_value(0, 0.01), DomainError);
}

TEST_CASE("chi-square statistic, dof and critical values") {
  const std::vector<std::uint64_t> obs{30, 20};
  const std::vector<double> p{0.5, 0.5};
  const ChiSquareResult r = chi_square_test(obs, p, 0.01);
  CHECK(r.statistic == Approx(2.0));
  CHECK(r.dof == 1);
  CHECK(r.critical_value == Approx(oracle::kChi2Df1Upper1Pct).epsilon(1e-10));
  CHECK(r.p_value == Approx(std::erfc(1.0)).epsilon(1e-10));
  CHECK_FALSE(r.rejected());

  std::vector<std::uint64_t> eleven(11, 100);
  const std::vector<double> uniform(11, 1.0 / 11.0);
  const ChiSquareResult u = chi_square_test(eleven, uniform, 0.01);
  CHECK(u.statistic == Approx(0.0));
  CHECK(u.critical_value == Approx(oracle::kChi2Df10Upper1Pct).epsilon(1e-10));
}

TEST_CASE("sparse bins are pooled") {
  const std::vector<std::uint64_t> obs{50, 48, 1, 1};
  const std::vector<double> p{0.49, 0.49, 0.01, 0.01};
  const ChiSquareResult r = chi_square_test(obs, p, 0.01);
  CHECK(r.pooled_bins == 2);
  CHECK(r.dof == 2);
  CHECK_THROWS_AS(chi_square_test(std::vector<std::uint64_t>{1}, std::vector<double>{1.0, 0.0}, 0.01), DomainError);
}

TEST_CASE("mass where none is expected rejects") {
  const std::vector<std::uint64_t> obs{50, 50, 5};
  const std::vector<double> p{0.5, 0.5, 0.0};
  const ChiSquareResult r = chi_square_test(obs, p, 0.01);
  CHECK(std::isinf(r.statistic));
  CHECK(r.rejected());
}
