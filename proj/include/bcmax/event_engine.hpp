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

#ifndef BCMAX_EVENT_ENGINE_HPP
#define BCMAX_EVENT_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bcmax/distribution.hpp"
#include "bcmax/errors.hpp"
#include "bcmax/logspace.hpp"
#include "bcmax/thresholds.hpp"

namespace bcmax {

// Event families A_n = {M_n <= x_n} for a running maximum M_n of i.i.d.
// draws and a nondecreasing threshold sequence x_n.  All compound-event
// probabilities below follow from two facts:
//
//   P(M_n <= x) = F(x)^n, and
//   fresh draws X_{n+1}, X_{n+2}, ... are independent of M_n.
//
// Two distinct "first occurrence" event families appear:
//
//   banded run (factorized):  the trajectory passes through consecutive
//       threshold bands, x_{n+j} < M_{n+j} <= x_{n+j+1} for j < k, then
//       A_{n+k} holds.  Its probability is an exact product of
//       independent factors (log_prob_run).
//
//   complemented run (exact): A_n^c ... A_{n+k-1}^c A_{n+k} literally.
//       For k >= 2 this is a strict superset of the banded event (the
//       maximum may overshoot a band and still satisfy every A^c), and
//       its probability does not factorize; it satisfies the exact
//       recursion implemented in run_terms_exact.
//
// The two families agree for k = 0 and k = 1.  Complemented runs
// partition the window union by first occurrence, so union_window sums
// them; the banded products are what the consecutive-ratio machinery
// (run_ratio, geometric tail bounds) is built on.

/// One run-event term.
struct RunTerm {
  long n = 0;        ///< window start index
  long k = 0;        ///< offset of the first occurrence
  double log_prob = kNegInf;

  double prob() const { return exp_logprob(log_prob); }
};

namespace detail {

/// Threshold window x_n .. x_{n+len-1} with per-point ln x and ln F(x),
/// verified nondecreasing.
struct Window {
  long n = 0;
  std::vector<double> x;
  std::vector<double> log_f;  // ln F(x_m)

  double lf(long m) const { return log_f[static_cast<std::size_t>(m - n)]; }
  double xv(long m) const { return x[static_cast<std::size_t>(m - n)]; }
};

inline Window fetch_window(const Distribution& d, const ThresholdSequence& thr,
                           long n, long len) {
  Window w;
  w.n = n;
  w.x.resize(static_cast<std::size_t>(len));
  w.log_f.resize(static_cast<std::size_t>(len));
  for (long i = 0; i < len; ++i) {
    const double xv = thr.value(n + i);
    w.x[static_cast<std::size_t>(i)] = xv;
    w.log_f[static_cast<std::size_t>(i)] =
        d.log_cdf_from_log(thr.log_value(n + i));
    if (i > 0) {
      const double prev = w.x[static_cast<std::size_t>(i - 1)];
      if (!(xv >= prev)) {
        throw threshold_order_error(
            "thresholds must be nondecreasing on the window: x_" +
            std::to_string(n + i - 1) + "=" + std::to_string(prev) + " > x_" +
            std::to_string(n + i) + "=" + std::to_string(xv));
      }
    }
  }
  return w;
}

}  // namespace detail

/// ln P(M_n <= x) = n ln F(x).
inline double log_prob_max_le(const Distribution& d, long n, double x) {
  if (n < 1) throw domain_error("maximum of n draws needs n >= 1");
  const double lf = d.log_cdf(x);
  if (lf == kNegInf) return kNegInf;
  return static_cast<double>(n) * lf;
}

/// ln P(A_n) = n ln F(x_n), routed through the sequence's analytic log
/// threshold so that transform-built scenarios keep full precision.
inline double log_prob_max_le(const Distribution& d,
                              const ThresholdSequence& thr, long n) {
  if (n < 1) throw domain_error("maximum of n draws needs n >= 1");
  const double lf = d.log_cdf_from_log(thr.log_value(n));
  if (lf == kNegInf) return kNegInf;
  return static_cast<double>(n) * lf;
}

/// ln of the banded run product:
///   k = 0:   F(x_n)^n
///   k >= 1:  [F(x_{n+1})^n - F(x_n)^n]
///            * prod_{j=1}^{k-1} [F(x_{n+j+1}) - F(x_{n+j})]
///            * F(x_{n+k}).
/// Every difference is evaluated as a log-difference-of-exponentials;
/// exactly-equal consecutive thresholds give an empty band and -inf.
inline double log_prob_run(const Distribution& d, const ThresholdSequence& thr,
                           long n, long k) {
  if (k < 0) throw domain_error("run length offset k must be >= 0");
  if (k == 0) return log_prob_max_le(d, thr, n);
  const detail::Window w = detail::fetch_window(d, thr, n, k + 1);
  const double nn = static_cast<double>(n);
  double lp = log_diff_exp(nn * w.lf(n + 1), nn * w.lf(n));
  for (long j = 1; j < k; ++j) {
    lp += log_diff_exp(w.lf(n + j + 1), w.lf(n + j));
  }
  lp += w.lf(n + k);
  return std::isnan(lp) ? kNegInf : lp;
}

/// Ratio of consecutive banded run terms, from the closed form
///   [F(x_{n+k+1}) - F(x_{n+k})] * F(x_{n+k+1}) / F(x_{n+k}),
/// not as a quotient of two run probabilities, so it stays finite and
/// accurate when both terms underflow.
inline double run_ratio(const Distribution& d, const ThresholdSequence& thr,
                        long n, long k) {
  if (k < 1) throw domain_error("run ratio needs k >= 1");
  const detail::Window w = detail::fetch_window(d, thr, n, k + 2);
  const double lf_lo = w.lf(n + k);
  const double lf_hi = w.lf(n + k + 1);
  if (lf_lo == kNegInf) {
    throw undefined_ratio_error("run ratio undefined: F(x_" +
                                std::to_string(n + k) + ") = 0");
  }
  return exp_logprob(log_diff_exp(lf_hi, lf_lo) + lf_hi - lf_lo);
}

/// ln P(A_n A_{n+1}^c) = ln[ F(x_n)^n (1 - F(x_{n+1})) ].  Given
/// M_n <= x_n <= x_{n+1}, failing A_{n+1} takes exactly one fresh draw
/// above x_{n+1}; the last factor is the closed-form survival.
inline double log_prob_event_then_fail(const Distribution& d,
                                       const ThresholdSequence& thr, long n) {
  const detail::Window w = detail::fetch_window(d, thr, n, 2);
  const double head = static_cast<double>(n) * w.lf(n);
  // survival straight from the log threshold: near the right endpoint
  // the linear x_{n+1} has already lost the digits this factor lives on
  const double surv = d.survival_from_log(thr.log_value(n + 1));
  if (head == kNegInf || surv <= 0.0) return kNegInf;
  return head + std::log(surv);
}

/// ln P(A_n A_{n+k}) = ln[ F(x_n)^n F(x_{n+k})^k ]:  M_n <= x_n and the
/// k fresh draws stay below x_{n+k}.
inline double log_prob_joint(const Distribution& d,
                             const ThresholdSequence& thr, long n, long k) {
  if (k < 1) throw domain_error("joint event needs k >= 1");
  const detail::Window w = detail::fetch_window(d, thr, n, k + 1);
  const double a = static_cast<double>(n) * w.lf(n);
  const double b = static_cast<double>(k) * w.lf(n + k);
  if (a == kNegInf || b == kNegInf) return kNegInf;
  return a + b;
}

/// Banded run terms for k = 0..K, built incrementally (each term is the
/// previous one times the closed-form ratio, which telescopes to the
/// full product).
inline std::vector<RunTerm> run_terms_factorized(const Distribution& d,
                                                 const ThresholdSequence& thr,
                                                 long n, long K) {
  if (K < 0) throw domain_error("window size K must be >= 0");
  const detail::Window w = detail::fetch_window(d, thr, n, K + 1);
  std::vector<RunTerm> terms;
  terms.reserve(static_cast<std::size_t>(K + 1));
  const double nn = static_cast<double>(n);
  double lp = (w.lf(n) == kNegInf) ? kNegInf : nn * w.lf(n);
  terms.push_back({n, 0, lp});
  for (long k = 1; k <= K; ++k) {
    double next;
    if (k == 1) {
      next = log_diff_exp(nn * w.lf(n + 1), nn * w.lf(n)) + w.lf(n + 1);
    } else {
      const double prev = terms.back().log_prob;
      next = (prev == kNegInf)
                 ? kNegInf
                 : prev + log_diff_exp(w.lf(n + k), w.lf(n + k - 1)) +
                       w.lf(n + k) - w.lf(n + k - 1);
    }
    if (std::isnan(next)) next = kNegInf;
    terms.push_back({n, k, next});
  }
  return terms;
}

/// Complemented-run terms R(n,k) = P(A_n^c ... A_{n+k-1}^c A_{n+k}) for
/// k = 0..K, via the exact first-occurrence recursion
///   R(n,m) = F(x_{n+m})^{n+m} - sum_{i<m} R(n,i) F(x_{n+m})^{m-i},
/// which conditions A_{n+m} on the first occurrence landing earlier.
/// These terms are disjoint and partition the window union.
inline std::vector<RunTerm> run_terms_exact(const Distribution& d,
                                            const ThresholdSequence& thr,
                                            long n, long K) {
  if (K < 0) throw domain_error("window size K must be >= 0");
  const detail::Window w = detail::fetch_window(d, thr, n, K + 1);
  std::vector<double> linear;
  linear.reserve(static_cast<std::size_t>(K + 1));
  std::vector<RunTerm> terms;
  terms.reserve(static_cast<std::size_t>(K + 1));
  for (long m = 0; m <= K; ++m) {
    const double lf = w.lf(n + m);
    double r;
    if (lf == kNegInf) {
      r = 0.0;
    } else {
      CompensatedSum acc;
      acc.add(std::exp(static_cast<double>(n + m) * lf));
      for (long i = 0; i < m; ++i) {
        const double ri = linear[static_cast<std::size_t>(i)];
        if (ri > 0.0) acc.add(-ri * std::exp(static_cast<double>(m - i) * lf));
      }
      r = std::max(0.0, acc.value());
    }
    linear.push_back(r);
    terms.push_back({n, m, r > 0.0 ? std::log(r) : kNegInf});
  }
  return terms;
}

/// ln P(A_n^c ... A_{n+k-1}^c A_{n+k}) for the literal complemented-run
/// event.
inline double log_prob_run_exact(const Distribution& d,
                                 const ThresholdSequence& thr, long n, long k) {
  return run_terms_exact(d, thr, n, k).back().log_prob;
}

/// P(union of A_j, j in [n, n+K]): compensated linear-space sum of the
/// exact first-occurrence terms, clamped to [0,1].
inline double union_window(const Distribution& d, const ThresholdSequence& thr,
                           long n, long K) {
  const std::vector<RunTerm> terms = run_terms_exact(d, thr, n, K);
  CompensatedSum acc;
  for (const RunTerm& t : terms) acc.add(t.prob());
  return std::clamp(acc.value(), 0.0, 1.0);
}

/// Partial sum of the banded run products over k = 0..K.  A lower bound
/// on union_window (each banded event sits inside its complemented run)
/// and the quantity the consecutive-ratio tail machinery bounds.
inline double run_sum_factorized(const Distribution& d,
                                 const ThresholdSequence& thr, long n, long K) {
  const std::vector<RunTerm> terms = run_terms_factorized(d, thr, n, K);
  CompensatedSum acc;
  for (const RunTerm& t : terms) acc.add(t.prob());
  return std::clamp(acc.value(), 0.0, 1.0);
}

/// x_n = phi_n^{-1}(level).
inline double threshold_from_transform(const TransformFamily& family,
                                       double level, long n) {
  return family.invert(n, level);
}

}  // namespace bcmax

#endif  // BCMAX_EVENT_ENGINE_HPP
