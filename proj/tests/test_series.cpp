/*
 * Copyright 2026 The bcmax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bcmax/series.hpp"

using namespace bcmax;

TEST_CASE("geometric series converges with a tight tail bound") {
  SeriesConfig cfg;
  cfg.n_max = 200;
  const auto rep = series_verdict(
      [](long n) { return std::pow(2.0, -static_cast<double>(n)); }, 1, cfg);
  CHECK(rep.verdict == Verdict::converges);
  CHECK(rep.decided_by == "geometric-ratio");
  REQUIRE(rep.upper_bound.has_value());
  // the true sum is 1; partial <= 1 <= upper bound
  CHECK(rep.partial_sum <= 1.0 + 1e-15);
  CHECK(*rep.upper_bound >= 1.0 - 1e-12);
  CHECK(*rep.upper_bound <= 1.0 + 1e-12);
}

TEST_CASE("harmonic series diverges via the exhibited minorant") {
  SeriesConfig cfg;
  cfg.n_max = 20000;
  const auto rep =
      series_verdict([](long n) { return 1.0 / static_cast<double>(n); }, 1, cfg);
  CHECK(rep.verdict == Verdict::diverges);
  CHECK(rep.decided_by == "minorant");
  REQUIRE(rep.minorant_c.has_value());
  CHECK(*rep.minorant_c == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("n^{-1/2} diverges") {
  SeriesConfig cfg;
  cfg.n_max = 20000;
  const auto rep = series_verdict(
      [](long n) { return 1.0 / std::sqrt(static_cast<double>(n)); }, 1, cfg);
  CHECK(rep.verdict == Verdict::diverges);
  CHECK(rep.decided_by == "minorant");
}

TEST_CASE("n^{-1.105} ln n converges through the Raabe window") {
  // a fixed ratio threshold cannot separate this from the harmonic
  // family; the Raabe statistic sits near 1.105 - 1/ln n
  SeriesConfig cfg;
  cfg.n_max = 1000000;
  const auto rep = series_verdict(
      [](long n) {
        const double x = static_cast<double>(n);
        return std::pow(x, -1.105) * std::log(x);
      },
      2, cfg);
  CHECK(rep.verdict == Verdict::converges);
  CHECK(rep.decided_by == "raabe");
  REQUIRE(rep.raabe_estimate.has_value());
  CHECK(*rep.raabe_estimate > 1.02);
  CHECK(*rep.raabe_estimate < 1.06);
  REQUIRE(rep.upper_bound.has_value());
  CHECK(*rep.upper_bound >= rep.partial_sum);
}

TEST_CASE("superpolynomial decay n^{-ln n / 2} converges") {
  SeriesConfig cfg;
  cfg.n_max = 100000;
  const auto rep = series_verdict(
      [](long n) {
        const double ln = std::log(static_cast<double>(n));
        return std::exp(-0.5 * ln * ln);
      },
      2, cfg);
  CHECK(rep.verdict == Verdict::converges);
}

TEST_CASE("all-zero series converges trivially") {
  SeriesConfig cfg;
  cfg.n_max = 5000;
  const auto rep = series_verdict([](long) { return 0.0; }, 1, cfg);
  CHECK(rep.verdict == Verdict::converges);
  CHECK(rep.decided_by == "all-zero");
  CHECK(rep.partial_sum == 0.0);
  CHECK(*rep.upper_bound == 0.0);
}

TEST_CASE("negative terms are a contract violation") {
  SeriesConfig cfg;
  cfg.n_max = 100;
  CHECK_THROWS_AS(
      series_verdict([](long n) { return n == 40 ? -1e-9 : 0.5; }, 1, cfg),
      domain_error);
}

TEST_CASE("partial-sum checkpoints are nondecreasing and end at the total") {
  SeriesConfig cfg;
  cfg.n_max = 12345;
  const auto rep = series_verdict(
      [](long n) { return 1.0 / static_cast<double>(n * n); }, 1, cfg);
  REQUIRE(!rep.partial_sums.empty());
  double prev = -1.0;
  for (const auto& [n, s] : rep.partial_sums) {
    CHECK(s >= prev);
    prev = s;
  }
  CHECK(rep.partial_sums.back().first == 12345);
  CHECK(rep.partial_sums.back().second == Catch::Approx(rep.partial_sum).epsilon(1e-15));
  // pi^2/6 within the convergence bound
  CHECK(rep.verdict == Verdict::converges);
  CHECK(*rep.upper_bound >= 1.6449340668 - 1e-6);
}

TEST_CASE("degenerate one-point range terminates and stays inconclusive") {
  SeriesConfig cfg;
  cfg.n_max = 7;
  const auto rep = series_verdict([](long) { return 0.25; }, 7, cfg);
  CHECK(rep.terms_computed == 1);
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(rep.partial_sums.size() == 1);
  CHECK_THROWS_AS(series_verdict([](long) { return 0.25; }, 8, cfg), domain_error);
}

TEST_CASE("term sink sees every term") {
  SeriesConfig cfg;
  cfg.n_max = 50;
  long count = 0;
  double last_partial = 0.0;
  const auto rep = series_verdict([](long) { return 0.125; }, 11, cfg, "sink",
                                  [&](long, double t, double p) {
                                    ++count;
                                    CHECK(t == 0.125);
                                    last_partial = p;
                                  });
  CHECK(count == 40);
  CHECK(last_partial == Catch::Approx(rep.partial_sum).epsilon(1e-15));
}
