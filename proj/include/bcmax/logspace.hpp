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

#ifndef BCMAX_LOGSPACE_HPP
#define BCMAX_LOGSPACE_HPP

#include <cmath>
#include <limits>

namespace bcmax {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ln(e^a + e^b), safe against overflow/underflow of either term.
inline double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

/// ln(e^a - e^b) for a >= b.  Equal arguments (an exactly empty
/// difference) give -inf.  The subtraction happens as
/// e^a * (1 - e^{b-a}) via expm1, which keeps full precision when the
/// two probabilities are nearly equal.
inline double log_diff_exp(double a, double b) {
  if (a == kNegInf && b == kNegInf) return kNegInf;
  if (b >= a) return kNegInf;
  if (b == kNegInf) return a;
  return a + std::log1p(-std::exp(b - a));
}

/// exp with underflow-to-zero semantics for log-probabilities.
inline double exp_logprob(double lp) {
  if (lp == kNegInf) return 0.0;
  return std::exp(lp);
}

/// Neumaier compensated accumulator.  Used wherever many small
/// probabilities are summed in linear space.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// |a - b| <= tol * max(|a|, |b|), with exact equality accepted
/// (covers the both-zero and both-infinite cases).
inline bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol * scale;
}

}  // namespace bcmax

#endif  // BCMAX_LOGSPACE_HPP
