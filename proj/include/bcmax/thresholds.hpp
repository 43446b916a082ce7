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

#ifndef BCMAX_THRESHOLDS_HPP
#define BCMAX_THRESHOLDS_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bcmax/errors.hpp"
#include "bcmax/logspace.hpp"

namespace bcmax {

enum class TransformKind { identity, power, scale };

/// An index-dependent monotone map applied to a running maximum:
///   identity:  m
///   power:     m^{n / ln n}          (n >= 2)
///   scale:     a_n * m               (a_n > 0)
/// Each map is strictly increasing in m on the positive axis, so it has
/// a closed-form inverse; the inverse at a fixed level is what defines
/// a threshold sequence.
class TransformFamily {
 public:
  static TransformFamily identity() {
    return TransformFamily(TransformKind::identity, nullptr, "identity");
  }

  static TransformFamily power() {
    return TransformFamily(TransformKind::power, nullptr, "power");
  }

  static TransformFamily scale(std::function<double(long)> a,
                               std::string description = "scale") {
    if (!a) throw domain_error("scale transform requires a sequence a_n");
    return TransformFamily(TransformKind::scale, std::move(a),
                           std::move(description));
  }

  TransformKind kind() const { return kind_; }
  const std::string& description() const { return description_; }

  /// a_n for the scale family.  Checked positive.
  double scale_at(long n) const {
    const double a = a_(n);
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw domain_error("scale sequence a_n must be positive and finite (n=" +
                         std::to_string(n) + " gave " + std::to_string(a) + ")");
    }
    return a;
  }

  double apply(long n, double m) const {
    switch (kind_) {
      case TransformKind::identity:
        return m;
      case TransformKind::power: {
        if (n < 2) {
          throw domain_error("power transform undefined at n=" +
                             std::to_string(n) + " (needs n >= 2)");
        }
        if (!(m >= 0.0)) {
          throw domain_error("power transform needs a nonnegative argument");
        }
        return std::pow(m, static_cast<double>(n) / std::log(static_cast<double>(n)));
      }
      case TransformKind::scale:
        return scale_at(n) * m;
    }
    return m;
  }

  /// phi_n^{-1}(level): the threshold x_n with
  /// {phi_n(M_n) <= level} = {M_n <= x_n}.
  double invert(long n, double level) const {
    return std::exp(log_invert(n, level));
  }

  /// ln phi_n^{-1}(level), evaluated analytically.  Downstream code
  /// raises cdf values to the n-th power; handing over the exact log
  /// keeps that amplification from eating 4-5 digits at large n.
  double log_invert(long n, double level) const {
    switch (kind_) {
      case TransformKind::identity:
        if (!(level > 0.0)) {
          throw domain_error("identity transform level must be positive");
        }
        return std::log(level);
      case TransformKind::power: {
        if (n < 2) {
          throw domain_error("power transform undefined at n=" +
                             std::to_string(n) + " (needs n >= 2)");
        }
        if (!(level > 0.0 && level <= 1.0)) {
          throw domain_error("power transform level must lie in (0,1]");
        }
        const double nn = static_cast<double>(n);
        return std::log(level) * std::log(nn) / nn;
      }
      case TransformKind::scale: {
        if (!(level > 0.0)) {
          throw domain_error("scale transform level must be positive");
        }
        return std::log(level) - std::log(scale_at(n));
      }
    }
    return kNegInf;
  }

 private:
  TransformFamily(TransformKind kind, std::function<double(long)> a,
                  std::string description)
      : kind_(kind), a_(std::move(a)), description_(std::move(description)) {}

  TransformKind kind_;
  std::function<double(long)> a_;
  std::string description_;
};

/// The sequence x_n defining the event family {M_n <= x_n}, either given
/// directly (a function of n) or constructed from a transform family at a
/// fixed level.  Values may fall below the distribution's support (cdf 0)
/// or reach the right endpoint (cdf 1).
///
/// The compound-event factorizations additionally require x_n to be
/// nondecreasing over any window they touch; that check is done lazily by
/// the event engine, not here.
///
/// Stateless and cheap to evaluate, hence safe to share across threads.
class ThresholdSequence {
 public:
  static ThresholdSequence explicit_sequence(std::function<double(long)> f,
                                             long n_min = 1,
                                             std::string description = "explicit") {
    if (!f) throw domain_error("threshold generator must be callable");
    ThresholdSequence t;
    t.value_fn_ = std::move(f);
    t.n_min_ = n_min;
    t.description_ = std::move(description);
    return t;
  }

  /// Convenience for tests and small scenarios: x_{n_start + i} = values[i].
  static ThresholdSequence from_values(std::vector<double> values, long n_start,
                                       std::string description = "explicit-list") {
    if (values.empty()) throw domain_error("threshold list must be nonempty");
    auto shared = std::make_shared<std::vector<double>>(std::move(values));
    auto fn = [shared, n_start](long n) -> double {
      const long i = n - n_start;
      if (i < 0 || i >= static_cast<long>(shared->size())) {
        throw domain_error("threshold index " + std::to_string(n) +
                           " outside the provided list");
      }
      return (*shared)[static_cast<std::size_t>(i)];
    };
    return explicit_sequence(fn, n_start, std::move(description));
  }

  /// x_n = phi_n^{-1}(level).  Default first index: the power map needs
  /// n >= 2 for its exponent, but x_n = level^{ln n / n} dips between
  /// n=2 and n=3 (ln n / n peaks at e), which would break the
  /// nondecreasing requirement for any window touching [2,3]; n_min=3 is
  /// the first index from which the constructed sequence is monotone.
  static ThresholdSequence from_transform(TransformFamily family, double level,
                                          long n_min = -1) {
    if (n_min < 0) {
      n_min = (family.kind() == TransformKind::power) ? 3 : 1;
    }
    if (family.kind() == TransformKind::power && n_min < 2) {
      throw domain_error("power-transform thresholds need n_min >= 2");
    }
    ThresholdSequence t;
    t.family_ = std::make_shared<TransformFamily>(std::move(family));
    t.level_ = level;
    t.n_min_ = n_min;
    t.description_ = t.family_->description() + " @ level " + std::to_string(level);
    return t;
  }

  long n_min() const { return n_min_; }
  const std::string& description() const { return description_; }
  bool from_transform_family() const { return family_ != nullptr; }
  const TransformFamily* family() const { return family_.get(); }
  double level() const { return level_; }

  double value(long n) const {
    check_index(n);
    if (family_) return std::exp(family_->log_invert(n, level_));
    return value_fn_(n);
  }

  /// ln x_n; -inf for nonpositive explicit values.  Transform-backed
  /// sequences return the analytic expression.
  double log_value(long n) const {
    check_index(n);
    if (family_) return family_->log_invert(n, level_);
    const double x = value_fn_(n);
    if (!(x > 0.0)) return kNegInf;
    return std::log(x);
  }

 private:
  ThresholdSequence() = default;

  void check_index(long n) const {
    if (n < n_min_) {
      throw domain_error("threshold index " + std::to_string(n) +
                         " below the sequence's first index " +
                         std::to_string(n_min_));
    }
  }

  std::function<double(long)> value_fn_;
  std::shared_ptr<TransformFamily> family_;
  double level_ = 0.0;
  long n_min_ = 1;
  std::string description_;
};

}  // namespace bcmax

#endif  // BCMAX_THRESHOLDS_HPP
