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

// Property-style sweeps over generated scenarios: random families,
// random monotone thresholds, random windows.  Hand-rolled generators
// on a pinned stream keep the cases reproducible.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <vector>

#include "bcmax/event_engine.hpp"
#include "bcmax/logspace.hpp"
#include "bcmax/rng.hpp"
#include "support/oracles.hpp"

using namespace bcmax;

namespace {

struct GeneratedCase {
  Distribution d = Distribution::uniform01();
  ThresholdSequence thr = ThresholdSequence::explicit_sequence(
      [](long n) { return static_cast<double>(n); }, 1);
  long n = 1;
};

Distribution pick_distribution(RngStream& g) {
  switch (g.next_u64() % 3) {
    case 0: return Distribution::uniform01();
    case 1: return Distribution::pareto1();
    default: return Distribution::exponential(0.25 + 3.0 * g.next_u01());
  }
}

/// Random nondecreasing thresholds spanning the support, occasionally
/// flat, occasionally dipping below the support or touching the
/// endpoint.
GeneratedCase generate_case(RngStream& g, long window_len) {
  GeneratedCase c;
  c.d = pick_distribution(g);
  c.n = 1 + static_cast<long>(g.next_u64() % 12);

  const double lo = c.d.support_lo();
  std::vector<double> xs(static_cast<std::size_t>(window_len + 2));
  double u_lo = 0.02 + 0.3 * g.next_u01();
  double u_hi = u_lo + (0.98 - u_lo) * (0.3 + 0.7 * g.next_u01());
  double x = c.d.quantile(u_lo);
  if (g.next_u64() % 5 == 0) x = lo - 0.5;  // start below the support
  const double x_top = c.d.quantile(u_hi);
  for (auto& v : xs) {
    v = x;
    const double step_u = g.next_u01();
    if (step_u < 0.25) {
      // flat step (empty band)
    } else {
      x += (x_top - x) * step_u * 0.5;
    }
  }
  if (c.d.kind() == DistributionKind::uniform01 && g.next_u64() % 7 == 0) {
    xs.back() = 1.0;  // touch the right endpoint
  }
  c.thr = ThresholdSequence::from_values(xs, c.n, "generated");
  return c;
}

}  // namespace

TEST_CASE("property: exact run terms match inclusion-exclusion") {
  RngStream g(20260810, 101);
  for (int rep = 0; rep < 200; ++rep) {
    const long K = 1 + static_cast<long>(g.next_u64() % 6);
    const GeneratedCase c = generate_case(g, K);
    const auto terms = run_terms_exact(c.d, c.thr, c.n, K);
    for (long k = 0; k <= K; ++k) {
      const double ours = terms[static_cast<std::size_t>(k)].prob();
      const double ie = testing::complemented_run_by_ie(c.d, c.thr, c.n, k);
      INFO("case " << rep << " d=" << c.d.name() << " n=" << c.n << " k=" << k);
      CHECK(std::abs(ours - ie) <= 1e-11 * std::max(1.0, std::abs(ie)));
    }
  }
}

TEST_CASE("property: union equals the sum of disjoint exact terms") {
  RngStream g(20260810, 202);
  for (int rep = 0; rep < 200; ++rep) {
    const long K = 1 + static_cast<long>(g.next_u64() % 6);
    const GeneratedCase c = generate_case(g, K);
    const double u = union_window(c.d, c.thr, c.n, K);
    const double ie = testing::union_by_inclusion_exclusion(c.d, c.thr, c.n, K);
    INFO("case " << rep << " d=" << c.d.name() << " n=" << c.n << " K=" << K);
    CHECK(std::abs(u - ie) <= 1e-11);
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
    // banded sum never exceeds the union, and both stay sub-probabilities
    const double banded = run_sum_factorized(c.d, c.thr, c.n, K);
    CHECK(banded <= u + 1e-12);
    CHECK(banded <= 1.0 + 1e-12);
  }
}

TEST_CASE("property: ratio consistency of the banded family") {
  RngStream g(20260810, 303);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const long K = 2 + static_cast<long>(g.next_u64() % 5);
    const GeneratedCase c = generate_case(g, K);
    for (long k = 1; k + 1 <= K; ++k) {
      double lp_k, lp_k1, ratio;
      try {
        lp_k = log_prob_run(c.d, c.thr, c.n, k);
        lp_k1 = log_prob_run(c.d, c.thr, c.n, k + 1);
        ratio = run_ratio(c.d, c.thr, c.n, k);
      } catch (const undefined_ratio_error&) {
        continue;
      }
      if (lp_k <= -700.0 || lp_k == kNegInf) continue;
      INFO("case " << rep << " d=" << c.d.name() << " n=" << c.n << " k=" << k);
      CHECK(rel_close(std::exp(lp_k1 - lp_k), ratio, 1e-9));
      ++checked;
    }
  }
  CHECK(checked > 200);  // the generator actually exercises the property
}

TEST_CASE("property: monotone threshold windows give monotone unions") {
  RngStream g(20260810, 404);
  for (int rep = 0; rep < 100; ++rep) {
    const long K = 2 + static_cast<long>(g.next_u64() % 5);
    const GeneratedCase c = generate_case(g, K);
    double prev = -1.0;
    for (long k = 0; k <= K; ++k) {
      const double u = union_window(c.d, c.thr, c.n, k);
      CHECK(u >= prev - 1e-15);  // unions grow with the window
      prev = u;
    }
  }
}

TEST_CASE("property: log-space helpers") {
  RngStream g(20260810, 505);
  for (int rep = 0; rep < 1000; ++rep) {
    const double a = -40.0 * g.next_u01();
    const double b = a - 30.0 * g.next_u01();
    const double sum = log_sum_exp(a, b);
    const double diff = log_diff_exp(a, b);
    CHECK(sum >= a);
    CHECK(diff <= a);
    // exp identities where everything is representable
    CHECK(rel_close(std::exp(sum), std::exp(a) + std::exp(b), 1e-12));
    CHECK(rel_close(std::exp(diff), std::exp(a) - std::exp(b), 1e-9));
  }
  CHECK(log_diff_exp(-1.5, -1.5) == kNegInf);
  CHECK(log_sum_exp(kNegInf, kNegInf) == kNegInf);
  CHECK(log_diff_exp(kNegInf, kNegInf) == kNegInf);
}
