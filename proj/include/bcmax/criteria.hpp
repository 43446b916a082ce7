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

#ifndef BCMAX_CRITERIA_HPP
#define BCMAX_CRITERIA_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bcmax/event_engine.hpp"
#include "bcmax/series.hpp"

namespace bcmax {

// Checkers for the classical "occurs infinitely often" tests on the
// event family A_n = {M_n <= x_n}.  Each checker turns one sufficient
// condition into a numeric probe and emits a structured verdict; the
// probes can only ever be evidence, so every report carries its raw
// series data and an explicit rule name.

inline constexpr const char* kConclusionIoZero = "P(A_n i.o.) = 0";

struct NRange {
  long n_min = 1;
  long n_max = 100000;
};

/// Numeric stand-in for the side condition "P(A_n) -> 0": the final
/// probed value sits below p0_tol and the last decade is strictly
/// decreasing.  Families like P(A_n) = n^{-0.105} decay too slowly for
/// a small absolute cutoff, so the trend test carries the weight.
struct SideCondition {
  bool holds = false;
  double final_value = 0.0;
  bool decreasing = false;
  std::string note;
};

inline SideCondition check_p_to_zero(const Distribution& d,
                                     const ThresholdSequence& thr,
                                     const NRange& range, double p0_tol = 0.5) {
  SideCondition sc;
  const long lo = std::max(range.n_min, thr.n_min());
  const long hi = std::max(range.n_max, lo);
  const long decade_lo = std::max(lo, hi / 10);
  std::vector<long> grid;
  const int kSamples = 17;
  for (int i = 0; i < kSamples; ++i) {
    const double f = static_cast<double>(i) / (kSamples - 1);
    const long n = decade_lo + static_cast<long>(
                                   f * static_cast<double>(hi - decade_lo));
    if (grid.empty() || grid.back() != n) grid.push_back(n);
  }
  sc.decreasing = true;
  double prev = kInf;
  for (const long n : grid) {
    const double p = exp_logprob(log_prob_max_le(d, thr, n));
    // a flat stretch of exact zeros is a reached limit, not a stall
    if (p > 0.0 && p >= prev) sc.decreasing = false;
    prev = p;
  }
  sc.final_value = prev;
  sc.holds = sc.final_value < p0_tol && (sc.decreasing || sc.final_value == 0.0);
  if (!sc.holds) {
    sc.note = "P(A_n) does not visibly tend to 0 over the probed range (final " +
              std::to_string(sc.final_value) + ")";
  }
  return sc;
}

namespace detail {

inline void attach_side_condition(SeriesReport& rep, const SideCondition& sc) {
  rep.side_condition_holds = sc.holds;
  rep.side_final_value = sc.final_value;
  if (!sc.note.empty()) rep.notes.push_back(sc.note);
}

/// Fixed-run-length series shared by the first-occurrence checkers.
/// m <= 1: the banded product is the exact event probability.
/// m >= 2: the banded product is a strict lower bound, so the checker
/// sums the exact complemented-run terms instead; a convergent lower
/// bound would not support the conclusion.
inline SeriesReport run_series(const Distribution& d,
                               const ThresholdSequence& thr, long m,
                               const NRange& range, const SeriesConfig& cfg,
                               const std::string& id,
                               const TermSink& sink = nullptr) {
  SeriesConfig local = cfg;
  local.n_max = std::max(range.n_max, std::max(range.n_min, thr.n_min()));
  const long first = std::max(range.n_min, thr.n_min());
  std::function<double(long)> terms;
  if (m == 0) {
    terms = [&d, &thr](long n) {
      return exp_logprob(log_prob_max_le(d, thr, n));
    };
  } else if (m == 1) {
    terms = [&d, &thr](long n) {
      return exp_logprob(log_prob_run(d, thr, n, 1));
    };
  } else {
    terms = [&d, &thr, m](long n) {
      return exp_logprob(log_prob_run_exact(d, thr, n, m));
    };
  }
  SeriesReport rep = series_verdict(terms, first, local, id, sink);
  if (m >= 2) {
    rep.notes.push_back(
        "run length >= 2: terms are exact complemented-run probabilities; "
        "the banded product would undercount them");
  }
  return rep;
}

}  // namespace detail

/// Sum of P(A_n).  Convergence alone settles the question; divergence
/// is reported as information only, because the independence-based
/// converse does not apply to events built on shared draws.
inline SeriesReport check_bc1(const Distribution& d,
                              const ThresholdSequence& thr, const NRange& range,
                              const SeriesConfig& cfg = {},
                              const TermSink& sink = nullptr) {
  SeriesReport rep = detail::run_series(d, thr, 0, range, cfg, "bc1", sink);
  if (rep.verdict == Verdict::converges) {
    rep.conclusion = kConclusionIoZero;
  } else if (rep.verdict == Verdict::diverges) {
    rep.notes.push_back(
        "probability series diverges: this test cannot decide, and the "
        "independence-based converse is inapplicable (the threshold events "
        "share their underlying draws)");
  }
  return rep;
}

/// Sum of P(A_n A_{n+1}^c), plus the P(A_n) -> 0 side condition.
inline SeriesReport check_barndorff(const Distribution& d,
                                    const ThresholdSequence& thr,
                                    const NRange& range,
                                    const SeriesConfig& cfg = {},
                                    const TermSink& sink = nullptr) {
  const long first = std::max(range.n_min, thr.n_min());
  SeriesConfig local = cfg;
  local.n_max = std::max(range.n_max, first);
  SeriesReport rep = series_verdict(
      [&d, &thr](long n) {
        return exp_logprob(log_prob_event_then_fail(d, thr, n));
      },
      first, local, "barndorff", sink);
  const SideCondition sc = check_p_to_zero(d, thr, range);
  detail::attach_side_condition(rep, sc);
  if (rep.verdict == Verdict::converges && sc.holds) {
    rep.conclusion = kConclusionIoZero;
  } else if (rep.verdict == Verdict::converges && !sc.holds) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("series converges but the side condition failed");
  }
  return rep;
}

/// Sum of the run terms at fixed run length m >= 0, plus the side
/// condition.  m = 0 reproduces check_bc1's term data exactly.
inline SeriesReport check_bs(const Distribution& d, const ThresholdSequence& thr,
                             long m, const NRange& range,
                             const SeriesConfig& cfg = {},
                             const TermSink& sink = nullptr) {
  if (m < 0) throw domain_error("run length m must be >= 0");
  SeriesReport rep = detail::run_series(d, thr, m, range, cfg,
                                        "bs:" + std::to_string(m), sink);
  const SideCondition sc = check_p_to_zero(d, thr, range);
  detail::attach_side_condition(rep, sc);
  if (rep.verdict == Verdict::converges && sc.holds) {
    rep.conclusion = kConclusionIoZero;
  } else if (rep.verdict == Verdict::converges && !sc.holds) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("series converges but the side condition failed");
  }
  return rep;
}

/// The three-series checker: requires the plain series and the pair
/// series to diverge while the gap series sum of
/// [P(A_n) - P(A_n A_{n+1})] converges.
struct StepanovReport {
  SeriesReport prob_series;   ///< sum P(A_n), must diverge
  SeriesReport joint_series;  ///< sum P(A_n A_{n+k}), must diverge
  SeriesReport gap_series;    ///< sum [P(A_n) - P(A_n A_{n+1})], must converge
  long k = 1;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::string> conclusion;
  std::vector<std::string> notes;
};

inline StepanovReport check_stepanov(const Distribution& d,
                                     const ThresholdSequence& thr, long k,
                                     const NRange& range,
                                     const SeriesConfig& cfg = {},
                                     const TermSink& sink_prob = nullptr,
                                     const TermSink& sink_joint = nullptr,
                                     const TermSink& sink_gap = nullptr) {
  if (k < 1) throw domain_error("pair offset k must be >= 1");
  StepanovReport rep;
  rep.k = k;
  const long first = std::max(range.n_min, thr.n_min());
  SeriesConfig local = cfg;
  local.n_max = std::max(range.n_max, first);

  rep.prob_series = series_verdict(
      [&](long n) { return exp_logprob(log_prob_max_le(d, thr, n)); }, first,
      local, "stepanov:" + std::to_string(k) + ":prob", sink_prob);
  rep.joint_series = series_verdict(
      [&](long n) { return exp_logprob(log_prob_joint(d, thr, n, k)); }, first,
      local, "stepanov:" + std::to_string(k) + ":joint", sink_joint);
  // Identical term-for-term to the consecutive-pair gap
  // P(A_n) - P(A_n A_{n+1}) = P(A_n)(1 - F(x_{n+1})).
  rep.gap_series = series_verdict(
      [&](long n) { return exp_logprob(log_prob_event_then_fail(d, thr, n)); },
      first, local, "stepanov:" + std::to_string(k) + ":gap", sink_gap);

  const SideCondition sc = check_p_to_zero(d, thr, range);
  rep.notes.push_back(
      "as stated, this test pairs two required divergences with a required "
      "convergence of the gap series; applied verbatim");
  if (!sc.holds) rep.notes.push_back(sc.note);

  if (rep.prob_series.verdict == Verdict::diverges &&
      rep.joint_series.verdict == Verdict::diverges &&
      rep.gap_series.verdict == Verdict::converges && sc.holds) {
    rep.verdict = Verdict::converges;
    rep.conclusion = kConclusionIoZero;
  } else if (rep.prob_series.verdict == Verdict::converges) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back(
        "plain probability series already converges: this checker is "
        "inapplicable (use the direct series test instead)");
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Consecutive-ratio checker and the window-union trend report.

struct RatioCheckConfig {
  std::vector<long> n_grid{100, 1000, 10000};
  long k_max = 8;
  /// Margin added to q_hat; default (1 - q_hat)/10, fixed after probing.
  std::optional<double> epsilon;
  double p0_tol = 0.5;
};

struct RatioProbe {
  long n = 0;
  long k = 0;
  double ratio = 0.0;
};

struct RatioReport {
  std::string criterion_id = "ratio";
  std::vector<RatioProbe> probes;
  std::vector<double> row_max;  ///< max ratio per grid row, grid order
  double q_hat = 0.0;           ///< max over the largest-n row
  double epsilon = 0.0;
  long probe_n = 0;             ///< largest grid index

  /// Geometric tail bound at probe_n in its classical displayed form
  ///   P(A_n) + P(A_n^c A_{n+1}) (q+eps)/(1-q-eps).
  /// The display drops the k=1 term itself, so it is NOT an upper bound
  /// on the run sum whenever q+eps < 1/2; bound_value_corrected keeps
  /// the term, i.e. multiplies by 1/(1-q-eps), and is a true bound on
  /// the banded run sum for every window within the probed depth.
  double bound_value = 0.0;
  double bound_value_corrected = 0.0;
  double p_a_at_probe = 0.0;
  double run1_at_probe = 0.0;

  Verdict verdict = Verdict::inconclusive;
  std::optional<std::string> conclusion;
  std::vector<std::string> notes;
  std::optional<bool> side_condition_holds;
};

inline RatioReport check_ratio(const Distribution& d,
                               const ThresholdSequence& thr,
                               const RatioCheckConfig& cfg) {
  if (cfg.n_grid.empty()) throw domain_error("ratio check needs a probe grid");
  if (cfg.k_max < 1) throw domain_error("ratio check needs k_max >= 1");
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
      throw domain_error("ratio probe grid must be strictly increasing");
    }
  }
  RatioReport rep;
  rep.probe_n = cfg.n_grid.back();
  bool undefined = false;
  for (const long n : cfg.n_grid) {
    double rmax = 0.0;
    for (long k = 1; k <= cfg.k_max; ++k) {
      double r = 0.0;
      try {
        r = run_ratio(d, thr, n, k);
      } catch (const undefined_ratio_error& e) {
        undefined = true;
        rep.notes.push_back(e.what());
        break;
      }
      rep.probes.push_back({n, k, r});
      rmax = std::max(rmax, r);
    }
    rep.row_max.push_back(rmax);
    if (undefined) break;
  }
  if (undefined) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }

  rep.q_hat = rep.row_max.back();
  rep.epsilon = cfg.epsilon.value_or((1.0 - rep.q_hat) / 10.0);
  if (!(rep.epsilon > 0.0)) {
    throw domain_error("ratio margin epsilon must be positive");
  }

  const long n = rep.probe_n;
  rep.p_a_at_probe = exp_logprob(log_prob_max_le(d, thr, n));
  rep.run1_at_probe = exp_logprob(log_prob_run(d, thr, n, 1));
  const double qe = rep.q_hat + rep.epsilon;
  if (qe < 1.0) {
    rep.bound_value = rep.p_a_at_probe + rep.run1_at_probe * qe / (1.0 - qe);
    rep.bound_value_corrected =
        rep.p_a_at_probe + rep.run1_at_probe / (1.0 - qe);
  } else {
    rep.bound_value = rep.bound_value_corrected = 1.0;
    rep.notes.push_back("q_hat + epsilon >= 1: geometric bound not certified");
  }

  const SideCondition sc =
      check_p_to_zero(d, thr, {cfg.n_grid.front(), cfg.n_grid.back()},
                      cfg.p0_tol);
  rep.side_condition_holds = sc.holds;
  if (!sc.holds) rep.notes.push_back(sc.note);

  if (qe < 1.0 && sc.holds) {
    rep.verdict = Verdict::converges;
    rep.conclusion = kConclusionIoZero;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

// ---------------------------------------------------------------------------

/// Window-sizing rule for the trend report: grow K until the banded
/// family's geometric tail estimate drops below tail_tol.
struct KRule {
  double tail_tol = 1e-6;
  long k_probe = 8;   ///< ratios probed per start index
  long k_cap = 64;    ///< give up (uncertified) beyond this window
};

struct RemarkPoint {
  long n = 0;
  long K = 0;
  double S = 0.0;          ///< P(union of A_j, j in [n, n+K])
  double head = 0.0;       ///< the k=0 term P(A_n)
  double tail_bound = 0.0; ///< certified banded tail past K
};

enum class TrendClass { decays_to_zero, stabilizes, inconclusive };

inline const char* to_string(TrendClass c) {
  switch (c) {
    case TrendClass::decays_to_zero: return "decays-to-zero";
    case TrendClass::stabilizes: return "stabilizes";
    case TrendClass::inconclusive: return "inconclusive";
  }
  return "?";
}

struct RemarkTrend {
  std::vector<RemarkPoint> S_values;
  double slope = 0.0;  ///< log-log least squares over positive S
  TrendClass classification = TrendClass::inconclusive;
  std::optional<double> a;  ///< limit value when the trend stabilizes
  bool certified = false;
  double slope_tol = 0.02;
  double stabilize_rel_tol = 0.01;
  std::vector<std::string> notes;
};

inline RemarkTrend remark_limit(const Distribution& d,
                                const ThresholdSequence& thr,
                                const std::vector<long>& n_grid,
                                const KRule& rule = {}, double slope_tol = 0.02,
                                double stabilize_rel_tol = 0.01) {
  if (n_grid.size() < 2) {
    throw domain_error("trend report needs at least two start indices");
  }
  RemarkTrend trend;
  trend.slope_tol = slope_tol;
  trend.stabilize_rel_tol = stabilize_rel_tol;
  trend.certified = true;

  for (const long n : n_grid) {
    RemarkPoint pt;
    pt.n = n;
    pt.head = exp_logprob(log_prob_max_le(d, thr, n));

    double q = 0.0;
    bool q_ok = true;
    try {
      for (long k = 1; k <= rule.k_probe; ++k) {
        q = std::max(q, run_ratio(d, thr, n, k));
      }
    } catch (const undefined_ratio_error&) {
      // Entirely sub-support windows have no ratios; their union is 0
      // and the truncation is exact.
      q_ok = pt.head == 0.0;
      q = 0.0;
    }

    long K = rule.k_probe;
    double tail = kInf;
    if (q_ok && q < 1.0) {
      for (K = 1; K <= rule.k_cap; ++K) {
        const double tK = exp_logprob(log_prob_run(d, thr, n, K));
        tail = tK * q / (1.0 - q);
        if (tail <= rule.tail_tol) break;
      }
      if (K > rule.k_cap) {
        trend.certified = false;
        K = rule.k_cap;
        trend.notes.push_back("window cap reached at n=" + std::to_string(n) +
                              " before the tail estimate fell below tolerance");
      }
    } else if (q_ok) {  // q = 0 with zero head: exact
      K = 1;
      tail = 0.0;
    } else {
      trend.certified = false;
      trend.notes.push_back("tail not certifiable at n=" + std::to_string(n) +
                            " (ratio bound >= 1 or undefined)");
      K = rule.k_probe;
      tail = kInf;
    }
    pt.K = K;
    pt.tail_bound = std::isfinite(tail) ? tail : 0.0;
    pt.S = union_window(d, thr, n, K);
    trend.S_values.push_back(pt);
  }

  if (!trend.certified) {
    trend.classification = TrendClass::inconclusive;
    trend.notes.push_back("truncation not certified; raw window sums attached");
    return trend;
  }
  trend.notes.push_back(
      "windows sized by the banded-family geometric tail rule");

  // all-zero: the limit is 0 without any fit
  bool all_zero = true;
  for (const auto& pt : trend.S_values) all_zero &= (pt.S == 0.0);
  if (all_zero) {
    trend.classification = TrendClass::decays_to_zero;
    trend.a = 0.0;
    trend.slope = 0.0;
    trend.notes.push_back("every window sum is exactly zero");
    return trend;
  }

  // log-log least squares over the positive points
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long m = 0;
  for (const auto& pt : trend.S_values) {
    if (pt.S <= 0.0) continue;
    const double lx = std::log(static_cast<double>(pt.n));
    const double ly = std::log(pt.S);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++m;
  }
  if (m >= 2) {
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    trend.slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
  }

  const double s_first = trend.S_values.front().S;
  const double s_last = trend.S_values.back().S;
  if (m == static_cast<long>(trend.S_values.size()) &&
      trend.slope < -slope_tol && s_last < s_first) {
    trend.classification = TrendClass::decays_to_zero;
    return trend;
  }
  if (trend.S_values.size() >= 3) {
    const auto& v = trend.S_values;
    const double a1 = v[v.size() - 3].S;
    const double a2 = v[v.size() - 2].S;
    const double a3 = v[v.size() - 1].S;
    const double hi = std::max({a1, a2, a3});
    const double lo = std::min({a1, a2, a3});
    if (hi > 0.0 && (hi - lo) <= stabilize_rel_tol * hi) {
      trend.classification = TrendClass::stabilizes;
      trend.a = a3;
      return trend;
    }
  }
  trend.classification = TrendClass::inconclusive;
  return trend;
}

}  // namespace bcmax

#endif  // BCMAX_CRITERIA_HPP
