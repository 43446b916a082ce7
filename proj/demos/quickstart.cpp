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

// Minimal library tour: build an event family, evaluate the checkers,
// print the verdicts.

#include <cmath>
#include <cstdio>

#include "bcmax/criteria.hpp"

int main() {
  using namespace bcmax;

  // Heavy-tailed draws (cdf 1 - 1/x), events A_n = {a_n M_n <= 2} with
  // a_n = ln(n)/n.
  const auto d = Distribution::pareto1();
  const auto thr = ThresholdSequence::from_transform(
      TransformFamily::scale(
          [](long n) { return std::log(static_cast<double>(n)) / n; },
          "scale ln(n)/n"),
      2.0, 3);

  const NRange range{3, 100000};

  const auto bc1 = check_bc1(d, thr, range);
  std::printf("plain series:  %s (partial sum %.4f after %ld terms)\n",
              to_string(bc1.verdict), bc1.partial_sum, bc1.terms_computed);

  RatioCheckConfig rc;
  rc.n_grid = {100, 1000, 10000};
  const auto ratio = check_ratio(d, thr, rc);
  std::printf("ratio checker: %s (q_hat = %.3e)\n", to_string(ratio.verdict),
              ratio.q_hat);
  if (ratio.conclusion) {
    std::printf("conclusion:    %s\n", ratio.conclusion->c_str());
  }

  const auto trend = remark_limit(d, thr, {1000, 10000, 100000});
  std::printf("window-union trend: %s (log-log slope %.4f)\n",
              to_string(trend.classification), trend.slope);
  return 0;
}
