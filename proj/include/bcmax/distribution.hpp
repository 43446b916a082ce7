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

#ifndef BCMAX_DISTRIBUTION_HPP
#define BCMAX_DISTRIBUTION_HPP

#include <cmath>
#include <string>

#include "bcmax/errors.hpp"
#include "bcmax/logspace.hpp"
#include "bcmax/rng.hpp"

namespace bcmax {

enum class DistributionKind { uniform01, pareto1, exponential };

/// A continuous distribution with closed-form cdf, survival and
/// quantile.  Everything the event engine needs reduces to evaluating
/// F, 1-F and ln F at threshold points, so each of those has its own
/// closed form; in particular survival is never computed as 1 - cdf,
/// and ln F is never computed as ln(1 - (1 - F)).
///
/// Immutable after construction; all members except sample() are pure.
class Distribution {
 public:
  static Distribution uniform01() {
    return Distribution(DistributionKind::uniform01, 0.0);
  }

  /// cdf 1 - 1/x on [1, inf).
  static Distribution pareto1() {
    return Distribution(DistributionKind::pareto1, 0.0);
  }

  static Distribution exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw domain_error("exponential rate must be a positive finite real");
    }
    return Distribution(DistributionKind::exponential, rate);
  }

  DistributionKind kind() const { return kind_; }
  double rate() const { return rate_; }

  /// sup{x : F(x) < 1}; +inf for unbounded support.
  double right_endpoint() const {
    switch (kind_) {
      case DistributionKind::uniform01: return 1.0;
      default: return kInf;
    }
  }

  double support_lo() const {
    switch (kind_) {
      case DistributionKind::uniform01: return 0.0;
      case DistributionKind::pareto1: return 1.0;
      case DistributionKind::exponential: return 0.0;
    }
    return 0.0;
  }

  /// F(x), clamped to [0,1]; below support -> 0, at/past the right
  /// endpoint -> exactly 1.
  double cdf(double x) const {
    switch (kind_) {
      case DistributionKind::uniform01:
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return x;
      case DistributionKind::pareto1:
        if (x < 1.0) return 0.0;
        if (x == kInf) return 1.0;
        return 1.0 - 1.0 / x;
      case DistributionKind::exponential:
        if (x <= 0.0) return 0.0;
        if (x == kInf) return 1.0;
        return -std::expm1(-rate_ * x);
    }
    return 0.0;
  }

  /// 1 - F(x) from the family's closed form.
  double survival(double x) const {
    switch (kind_) {
      case DistributionKind::uniform01:
        if (x <= 0.0) return 1.0;
        if (x >= 1.0) return 0.0;
        return 1.0 - x;
      case DistributionKind::pareto1:
        if (x < 1.0) return 1.0;
        return 1.0 / x;
      case DistributionKind::exponential:
        if (x <= 0.0) return 1.0;
        return std::exp(-rate_ * x);
    }
    return 0.0;
  }

  /// ln F(x) in [-inf, 0].  Near the right endpoint this evaluates
  /// log1p(-survival), which keeps ~1e-18 absolute accuracy where
  /// 1 - F(x) is far below machine epsilon.
  double log_cdf(double x) const {
    switch (kind_) {
      case DistributionKind::uniform01:
        if (x <= 0.0) return kNegInf;
        if (x >= 1.0) return 0.0;
        return std::log(x);
      case DistributionKind::pareto1:
        if (x < 1.0) return kNegInf;
        if (x == kInf) return 0.0;
        return std::log1p(-1.0 / x);
      case DistributionKind::exponential: {
        if (x <= 0.0) return kNegInf;
        if (x == kInf) return 0.0;
        const double lx = rate_ * x;
        // Two stable branches: F small (log of exact cdf) and F near 1
        // (log1p of exact survival).
        if (lx < 0.693147180559945) return std::log(-std::expm1(-lx));
        return std::log1p(-std::exp(-lx));
      }
    }
    return kNegInf;
  }

  /// ln F(e^{log_x}).  Threshold constructions often know ln x_n to full
  /// precision while x_n itself has already been rounded; feeding the
  /// log straight through avoids the exp/log round trip, which matters
  /// when F(x_n)^n amplifies the rounding by a factor of n.
  double log_cdf_from_log(double log_x) const {
    switch (kind_) {
      case DistributionKind::uniform01:
        if (log_x >= 0.0) return 0.0;
        return log_x;
      case DistributionKind::pareto1: {
        if (log_x < 0.0) return kNegInf;  // x < 1
        if (log_x == kInf) return 0.0;
        // survival = 1/x = e^{-log_x}
        return std::log1p(-std::exp(-log_x));
      }
      case DistributionKind::exponential:
        return log_cdf(std::exp(log_x));
    }
    return kNegInf;
  }

  /// 1 - F(e^{log_x}), stable where F is near 1 (see log_cdf_from_log
  /// for why thresholds arrive as logs).
  double survival_from_log(double log_x) const {
    switch (kind_) {
      case DistributionKind::uniform01:
        if (log_x >= 0.0) return 0.0;
        return -std::expm1(log_x);
      case DistributionKind::pareto1:
        if (log_x < 0.0) return 1.0;
        return std::exp(-log_x);
      case DistributionKind::exponential:
        return survival(std::exp(log_x));
    }
    return 0.0;
  }

  /// F(hi) - F(lo) for lo <= hi, from per-family closed forms (no
  /// cancellation between two values near 1).
  double cdf_diff(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    switch (kind_) {
      case DistributionKind::uniform01: {
        const double a = std::fmin(std::fmax(lo, 0.0), 1.0);
        const double b = std::fmin(std::fmax(hi, 0.0), 1.0);
        return b - a;
      }
      case DistributionKind::pareto1: {
        if (hi < 1.0) return 0.0;
        if (lo < 1.0) return cdf(hi);
        if (hi == kInf) return 1.0 / lo;
        return (hi - lo) / (lo * hi);
      }
      case DistributionKind::exponential: {
        if (hi <= 0.0) return 0.0;
        const double a = std::fmax(lo, 0.0);
        if (hi == kInf) return std::exp(-rate_ * a);
        return std::exp(-rate_ * a) * -std::expm1(-rate_ * (hi - a));
      }
    }
    return 0.0;
  }

  /// F^{-1}(u) for u in (0,1).
  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
      throw domain_error("quantile argument must lie strictly in (0,1)");
    }
    switch (kind_) {
      case DistributionKind::uniform01: return u;
      case DistributionKind::pareto1: return 1.0 / (1.0 - u);
      case DistributionKind::exponential: return -std::log1p(-u) / rate_;
    }
    return 0.0;
  }

  /// One variate via the stream's next uniform.  Deterministic in the
  /// stream state; the stream advances by exactly one draw.
  double sample(RngStream& rng) const { return quantile(rng.next_u01()); }

  std::string name() const {
    switch (kind_) {
      case DistributionKind::uniform01: return "uniform01";
      case DistributionKind::pareto1: return "pareto1";
      case DistributionKind::exponential:
        return "exponential:" + format_rate();
    }
    return "?";
  }

  /// Parses the scenario-file spelling: "uniform01", "pareto1",
  /// "exponential:<rate>".
  static Distribution parse(const std::string& text) {
    if (text == "uniform01") return uniform01();
    if (text == "pareto1") return pareto1();
    const std::string prefix = "exponential:";
    if (text.rfind(prefix, 0) == 0) {
      const std::string num = text.substr(prefix.size());
      std::size_t pos = 0;
      double rate = 0.0;
      try {
        rate = std::stod(num, &pos);
      } catch (const std::exception&) {
        throw domain_error("bad exponential rate '" + num + "'");
      }
      if (pos != num.size()) {
        throw domain_error("bad exponential rate '" + num + "'");
      }
      return exponential(rate);
    }
    throw domain_error("unknown distribution '" + text +
                       "' (expected uniform01 | pareto1 | exponential:<rate>)");
  }

 private:
  Distribution(DistributionKind kind, double rate) : kind_(kind), rate_(rate) {}

  std::string format_rate() const {
    std::string s = std::to_string(rate_);
    // trim trailing zeros for a stable, readable name
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  DistributionKind kind_;
  double rate_;
};

}  // namespace bcmax

#endif  // BCMAX_DISTRIBUTION_HPP
