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

#ifndef BCMAX_ERRORS_HPP
#define BCMAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bcmax {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A value outside the mathematical domain of an operation
/// (probability outside (0,1), nonpositive rate, transform level out of
/// range, ...).  Rejected at construction or call time, before any
/// computation happens.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// A threshold window that fails the nondecreasing requirement.  The
/// compound-event factorizations are only valid for nondecreasing
/// thresholds, so the engine refuses to compute a wrong number.
class threshold_order_error : public error {
 public:
  explicit threshold_order_error(const std::string& what) : error(what) {}
};

/// Consecutive-term ratio requested at a point where the denominator
/// cdf value is exactly zero.
class undefined_ratio_error : public error {
 public:
  explicit undefined_ratio_error(const std::string& what) : error(what) {}
};

/// Scenario text that fails to parse or validate.  Carries a location
/// ("file:line" or "expression offset N") for structured reporting.
class config_error : public error {
 public:
  config_error(const std::string& what, std::string location)
      : error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace bcmax

#endif  // BCMAX_ERRORS_HPP
