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

#include "bcmax/thresholds.hpp"

using namespace bcmax;

TEST_CASE("transform inverses: hand values") {
  // power: 0.9^(ln(100)/100)
  const auto power = TransformFamily::power();
  CHECK(power.invert(100, 0.9) ==
        Catch::Approx(0.99515972103295339).epsilon(1e-12));

  // identity: any n
  const auto ident = TransformFamily::identity();
  CHECK(ident.invert(5, 0.37) == Catch::Approx(0.37).epsilon(1e-15));
  CHECK(ident.invert(500000, 0.37) == Catch::Approx(0.37).epsilon(1e-15));

  // scale with a_n = ln(n)/n at n=100, level 2 -> 200/ln(100)
  const auto scale = TransformFamily::scale(
      [](long n) { return std::log(static_cast<double>(n)) / n; });
  CHECK(scale.invert(100, 2.0) ==
        Catch::Approx(43.429448190325183).epsilon(1e-12));
}

TEST_CASE("transform domain errors") {
  const auto power = TransformFamily::power();
  CHECK_THROWS_AS(power.invert(1, 0.9), domain_error);
  CHECK_THROWS_AS(power.invert(100, 0.0), domain_error);
  CHECK_THROWS_AS(power.invert(100, 1.5), domain_error);
  CHECK_THROWS_AS(power.apply(1, 0.5), domain_error);

  const auto scale = TransformFamily::scale([](long) { return -1.0; });
  CHECK_THROWS_AS(scale.invert(10, 2.0), domain_error);

  const auto ident = TransformFamily::identity();
  CHECK_THROWS_AS(ident.invert(10, -1.0), domain_error);
}

TEST_CASE("apply and invert are inverse maps") {
  const auto power = TransformFamily::power();
  for (const long n : {3L, 10L, 100L, 5000L}) {
    for (const double level : {0.2, 0.5, 0.9, 0.99}) {
      const double x = power.invert(n, level);
      CHECK(rel_close(power.apply(n, x), level, 1e-12));
    }
  }
  const auto scale = TransformFamily::scale(
      [](long n) { return std::log(static_cast<double>(n)) / n; });
  for (const long n : {3L, 10L, 100L, 5000L}) {
    const double x = scale.invert(n, 2.0);
    CHECK(rel_close(scale.apply(n, x), 2.0, 1e-12));
  }
}

TEST_CASE("threshold sequences: values, logs, domains") {
  const auto thr = ThresholdSequence::from_transform(TransformFamily::power(), 0.9);
  CHECK(thr.n_min() == 3);  // power default: first monotone index
  CHECK_THROWS_AS(thr.value(2), domain_error);

  for (const long n : {3L, 10L, 1000L}) {
    CHECK(rel_close(std::log(thr.value(n)), thr.log_value(n), 1e-9));
  }

  // the power sequence is nondecreasing from its default start
  double prev = thr.value(3);
  for (long n = 4; n <= 2000; ++n) {
    const double x = thr.value(n);
    CHECK(x >= prev);
    prev = x;
  }

  const auto expl = ThresholdSequence::explicit_sequence(
      [](long n) { return 1.0 - 1.0 / static_cast<double>(n); }, 2);
  CHECK(expl.value(10) == Catch::Approx(0.9).epsilon(1e-15));
  CHECK(expl.log_value(10) == Catch::Approx(std::log(0.9)).epsilon(1e-12));
  CHECK_THROWS_AS(expl.value(1), domain_error);

  // below-support values carry a -inf log
  const auto neg = ThresholdSequence::explicit_sequence([](long) { return -3.0; }, 1);
  CHECK(neg.log_value(5) == kNegInf);
}

TEST_CASE("explicit list sequences are bounds checked") {
  const auto t = ThresholdSequence::from_values({0.5, 0.6, 0.7}, 2);
  CHECK(t.value(2) == 0.5);
  CHECK(t.value(4) == 0.7);
  CHECK_THROWS_AS(t.value(5), domain_error);
  CHECK_THROWS_AS(t.value(1), domain_error);
}
