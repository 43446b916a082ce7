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

#include "bcmax/criteria.hpp"

using namespace bcmax;

namespace {

const Distribution kUniform = Distribution::uniform01();
const Distribution kPareto = Distribution::pareto1();

ThresholdSequence power_thresholds(double level = 0.9) {
  return ThresholdSequence::from_transform(TransformFamily::power(), level);
}

ThresholdSequence heavy_scaled(double level = 2.0) {
  return ThresholdSequence::from_transform(
      TransformFamily::scale(
          [](long n) { return std::log(static_cast<double>(n)) / n; },
          "scale ln(n)/n"),
      level, 3);
}

ThresholdSequence heavy_scaled_sq(double level = 2.0) {
  return ThresholdSequence::from_transform(
      TransformFamily::scale(
          [](long n) {
            const double ln = std::log(static_cast<double>(n));
            return ln * ln / static_cast<double>(n);
          },
          "scale ln(n)^2/n"),
      level, 3);
}

ThresholdSequence one_minus_inv_n() {
  return ThresholdSequence::explicit_sequence(
      [](long n) { return 1.0 - 1.0 / static_cast<double>(n); }, 2, "1-1/n");
}

ThresholdSequence constant(double c) {
  return ThresholdSequence::explicit_sequence([c](long) { return c; }, 1, "const");
}

}  // namespace

TEST_CASE("bc1 on the scaled heavy-tail family: diverges (terms ~ n^{-1/2})") {
  const NRange range{3, 200000};
  const auto rep = check_bc1(kPareto, heavy_scaled(), range);
  CHECK(rep.verdict == Verdict::diverges);
  CHECK(!rep.conclusion.has_value());
  REQUIRE(!rep.notes.empty());  // the cannot-decide note

  // the terms really do behave like n^{-1/2}
  REQUIRE(rep.minorant_c.has_value());
  CHECK(*rep.minorant_c > 1.0);  // n * n^{-1/2} = sqrt(n) >> 1
}

TEST_CASE("bc1 with the faster scale ln(n)^2/n: converges, settles the question") {
  const NRange range{3, 100000};
  const auto rep = check_bc1(kPareto, heavy_scaled_sq(), range);
  CHECK(rep.verdict == Verdict::converges);
  REQUIRE(rep.conclusion.has_value());
  CHECK(*rep.conclusion == kConclusionIoZero);
}

TEST_CASE("bc1 with sub-support thresholds: all-zero series") {
  const NRange range{1, 5000};
  const auto rep = check_bc1(kUniform, constant(-1.0), range);
  CHECK(rep.verdict == Verdict::converges);
  CHECK(rep.decided_by == "all-zero");
  CHECK(rep.conclusion.has_value());
}

TEST_CASE("barndorff on the power family: converges with the side condition") {
  const NRange range{3, 1000000};
  const auto rep = check_barndorff(kUniform, power_thresholds(), range);
  CHECK(rep.verdict == Verdict::converges);
  REQUIRE(rep.side_condition_holds.has_value());
  CHECK(*rep.side_condition_holds);
  REQUIRE(rep.conclusion.has_value());
  CHECK(*rep.conclusion == kConclusionIoZero);
}

TEST_CASE("barndorff on x_n = 1 - 1/n: series diverges, criterion undecided") {
  // terms (1-1/n)^n/(n+1) ~ e^{-1}/n
  const NRange range{2, 100000};
  const auto rep = check_barndorff(kUniform, one_minus_inv_n(), range);
  CHECK(rep.verdict == Verdict::diverges);
  CHECK(!rep.conclusion.has_value());
  // P(A_n) = (1-1/n)^n rises toward e^{-1}: the side condition fails too
  REQUIRE(rep.side_condition_holds.has_value());
  CHECK_FALSE(*rep.side_condition_holds);

  // sanity: the term magnitude matches e^{-1}/n
  const double t = std::exp(log_prob_event_then_fail(kUniform, one_minus_inv_n(), 1000));
  CHECK(rel_close(t, std::exp(-1.0) / 1001.0, 2e-3));
}

TEST_CASE("barndorff with thresholds at the right endpoint: inconclusive") {
  const NRange range{1, 20000};
  const auto rep = check_barndorff(kUniform, constant(1.0), range);
  CHECK(rep.verdict == Verdict::inconclusive);
  REQUIRE(rep.side_condition_holds.has_value());
  CHECK_FALSE(*rep.side_condition_holds);
  CHECK(rep.max_term == 0.0);  // every term vanishes
}

TEST_CASE("bs with m=0 returns term-identical data to bc1") {
  const NRange range{3, 50000};
  const auto a = check_bc1(kPareto, heavy_scaled(), range);
  const auto b = check_bs(kPareto, heavy_scaled(), 0, range);
  CHECK(a.partial_sum == b.partial_sum);
  CHECK(a.last_term == b.last_term);
  CHECK(a.max_term == b.max_term);
  REQUIRE(a.partial_sums.size() == b.partial_sums.size());
  for (std::size_t i = 0; i < a.partial_sums.size(); ++i) {
    CHECK(a.partial_sums[i].first == b.partial_sums[i].first);
    CHECK(a.partial_sums[i].second == b.partial_sums[i].second);
  }
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("bs with m=1 on the power family: converges") {
  const NRange range{3, 1000000};
  const auto rep = check_bs(kUniform, power_thresholds(), 1, range);
  CHECK(rep.verdict == Verdict::converges);
  REQUIRE(rep.conclusion.has_value());
}

TEST_CASE("bs m=1 terms are smaller than m=0 terms for x_n = 1 - 1/n") {
  const auto thr = one_minus_inv_n();
  for (long n = 3; n <= 100; ++n) {
    const double t0 = std::exp(log_prob_run(kUniform, thr, n, 0));
    const double t1 = std::exp(log_prob_run(kUniform, thr, n, 1));
    CHECK(t1 < t0);
  }
}

TEST_CASE("three-series checker on the power family") {
  const NRange range{3, 1000000};
  const auto rep = check_stepanov(kUniform, power_thresholds(), 1, range);
  CHECK(rep.prob_series.verdict == Verdict::diverges);
  CHECK(rep.joint_series.verdict == Verdict::diverges);
  CHECK(rep.gap_series.verdict == Verdict::converges);
  CHECK(rep.verdict == Verdict::converges);
  REQUIRE(rep.conclusion.has_value());
  CHECK(*rep.conclusion == kConclusionIoZero);
  // the standing caveat about the stated hypothesis list
  REQUIRE(!rep.notes.empty());
}

TEST_CASE("three-series checker inapplicable below support") {
  const NRange range{1, 5000};
  const auto rep = check_stepanov(kUniform, constant(-2.0), 1, range);
  CHECK(rep.prob_series.verdict == Verdict::converges);
  CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("gap-series terms equal the pair difference route at 1e-12") {
  // P(A_n) - P(A_n A_{n+1}) = P(A_n)(1 - F(x_{n+1})), evaluated without
  // catastrophic cancellation through expm1 of the log-cdf
  const auto check_family = [](const Distribution& d,
                               const ThresholdSequence& thr, long lo, long hi) {
    for (long n = lo; n <= hi; ++n) {
      const double lf_next = d.log_cdf_from_log(thr.log_value(n + 1));
      const double route_a =
          std::exp(log_prob_max_le(d, thr, n)) * -std::expm1(lf_next);
      const double route_b = std::exp(log_prob_event_then_fail(d, thr, n));
      INFO("n=" << n);
      CHECK(rel_close(route_a, route_b, 1e-12));
    }
  };
  check_family(kUniform, power_thresholds(), 3, 300);
  check_family(kPareto, heavy_scaled(), 3, 300);
  check_family(kUniform, one_minus_inv_n(), 2, 300);
}

TEST_CASE("ratio checker on the power family") {
  RatioCheckConfig cfg;
  cfg.n_grid = {100, 1000, 10000};
  cfg.k_max = 8;
  const auto rep = check_ratio(kUniform, power_thresholds(), cfg);
  CHECK(rep.q_hat < 0.01);
  CHECK(rep.verdict == Verdict::converges);
  REQUIRE(rep.conclusion.has_value());
  CHECK(*rep.conclusion == kConclusionIoZero);
  // the observed ratios shrink as the probe index grows
  REQUIRE(rep.row_max.size() == 3);
  CHECK(rep.row_max[0] > rep.row_max[1]);
  CHECK(rep.row_max[1] > rep.row_max[2]);
  // the corrected bound dominates the displayed one
  CHECK(rep.bound_value_corrected > rep.bound_value);
  CHECK(rep.probe_n == 10000);
}

TEST_CASE("ratio checker decides the scaled heavy-tail family that bc1 cannot") {
  RatioCheckConfig cfg;
  cfg.n_grid = {100, 1000, 10000};
  cfg.k_max = 8;
  const auto ratio_rep = check_ratio(kPareto, heavy_scaled(), cfg);
  CHECK(ratio_rep.q_hat < 1.0);
  CHECK(ratio_rep.verdict == Verdict::converges);

  const auto bc1_rep = check_bc1(kPareto, heavy_scaled(), {3, 100000});
  CHECK(bc1_rep.verdict == Verdict::diverges);  // the pair of verdicts is the point
}

TEST_CASE("ratio checker edge cases") {
  // constant thresholds inside the support: every ratio vanishes and
  // P(A_n) = F(c)^n -> 0, so the verdict settles the question
  RatioCheckConfig cfg;
  cfg.n_grid = {10, 100, 1000};
  cfg.k_max = 4;
  const auto rep = check_ratio(kUniform, constant(0.5), cfg);
  CHECK(rep.q_hat == 0.0);
  CHECK(rep.verdict == Verdict::converges);

  // thresholds at the right endpoint: ratios vanish but P(A_n) = 1
  const auto at_rf = check_ratio(kUniform, constant(1.0), cfg);
  CHECK(at_rf.q_hat == 0.0);
  CHECK(at_rf.verdict == Verdict::inconclusive);

  // below support: undefined ratios surface as inconclusive + diagnostic
  const auto undef = check_ratio(kUniform, constant(-1.0), cfg);
  CHECK(undef.verdict == Verdict::inconclusive);
  REQUIRE(!undef.notes.empty());
}

TEST_CASE("trend report on the power family: slope matches the head exponent") {
  const auto trend =
      remark_limit(kUniform, power_thresholds(), {1000, 10000, 100000});
  CHECK(trend.certified);
  CHECK(trend.classification == TrendClass::decays_to_zero);
  CHECK(std::abs(trend.slope - std::log(0.9)) < 0.02);

  // the K=0 head carries the sum: later terms contribute < 5% at n=1000
  const auto& first = trend.S_values.front();
  CHECK(first.n == 1000);
  CHECK((first.S - first.head) / first.S < 0.05);
}

TEST_CASE("trend report at the right endpoint stabilizes at one") {
  const auto trend = remark_limit(kUniform, constant(1.0), {10, 100, 1000});
  CHECK(trend.classification == TrendClass::stabilizes);
  REQUIRE(trend.a.has_value());
  CHECK(*trend.a == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trend report below support decays to zero") {
  const auto trend = remark_limit(kUniform, constant(-1.0), {10, 100, 1000});
  CHECK(trend.classification == TrendClass::decays_to_zero);
  REQUIRE(trend.a.has_value());
  CHECK(*trend.a == 0.0);
}

TEST_CASE("cross-checker coherence on the builtin families") {
  // wherever the ratio checker concludes, the trend report must not
  // stabilize above the geometric bound
  RatioCheckConfig cfg;
  cfg.n_grid = {100, 1000, 10000};
  struct Case {
    const Distribution& d;
    ThresholdSequence thr;
  };
  const Case cases[] = {{kUniform, power_thresholds()}, {kPareto, heavy_scaled()}};
  for (const auto& c : cases) {
    const auto ratio_rep = check_ratio(c.d, c.thr, cfg);
    if (ratio_rep.verdict != Verdict::converges) continue;
    const auto trend = remark_limit(c.d, c.thr, {1000, 10000, 100000});
    if (trend.classification == TrendClass::stabilizes) {
      CHECK(*trend.a <= ratio_rep.bound_value + 1e-6);
    }
  }
}
