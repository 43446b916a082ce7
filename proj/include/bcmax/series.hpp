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

#ifndef BCMAX_SERIES_HPP
#define BCMAX_SERIES_HPP

#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcmax/errors.hpp"
#include "bcmax/logspace.hpp"

namespace bcmax {

enum class Verdict { converges, diverges, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converges: return "converges";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Knobs for the numeric series classifier.  Finitely many terms never
/// prove convergence or divergence; each rule states exactly what it
/// extrapolates, the raw data always rides along, and inconclusive is a
/// first-class outcome.
struct SeriesConfig {
  long n_max = 100000;
  int window = 20;               ///< consecutive terms backing any verdict
  double ratio_threshold = 0.999;///< geometric rule: all window ratios <= this
  double raabe_margin = 0.02;    ///< Raabe rule: n(t_n/t_{n+1}-1) >= 1+margin
  double div_growth_tol = 0.01;  ///< minimum partial-sum growth per decade
  double term_floor = 1e-300;    ///< below this a term counts as zero
  std::size_t max_checkpoints = 192;
};

struct SeriesReport {
  std::string criterion_id;
  long first_index = 0;
  long last_index = 0;
  long terms_computed = 0;

  /// Geometrically spaced (index, partial sum) samples; the final point
  /// is always included.  Nondecreasing by construction.
  std::vector<std::pair<long, double>> partial_sums;

  double partial_sum = 0.0;
  double last_term = 0.0;
  double max_term = 0.0;
  double last_decade_growth = 0.0;

  std::optional<double> tail_ratio_estimate;  ///< max ratio over the window
  std::optional<double> raabe_estimate;       ///< min n(t_n/t_{n+1}-1) over it
  std::optional<double> minorant_c;           ///< exhibited c with t_n >= c/n
  std::optional<double> upper_bound;          ///< partial + tail bound

  Verdict verdict = Verdict::inconclusive;
  std::string decided_by;  ///< "geometric-ratio" | "raabe" | "minorant" | "all-zero" | ""
  std::vector<std::string> notes;
  std::optional<std::string> conclusion;

  /// Side-condition block used by the checkers that need P(A_n) -> 0.
  std::optional<bool> side_condition_holds;
  std::optional<double> side_final_value;
};

/// Optional per-term observer; receives (n, term, partial sum) for every
/// computed index.  This is how the CLI streams full series tables to
/// CSV without the report itself holding a million rows.
using TermSink = std::function<void(long n, double term, double partial)>;

/// Classifies sum of terms(n), n = first..cfg.n_max, given terms >= 0.
///
/// Rules, in order:
///   all-zero:        every term below the floor.  Converges trivially.
///   geometric ratio: the last `window` ratios all <= ratio_threshold r;
///                    tail bounded by last_term * r/(1-r).
///   Raabe window:    rho_n = n(t_n/t_{n+1}-1) >= 1+margin across the
///                    window; tail bounded by last_term * N/(rho-1).
///                    Separates terms like n^{-1.1} ln n (convergent)
///                    from n^{-1/2} and 1/n, which a fixed ratio
///                    threshold cannot do.
///   minorant:        the window exhibits c = min n*t_n > 0 with a
///                    non-decreasing n*t_n trend and real partial-sum
///                    growth over the last decade.  Diverges by
///                    comparison with c/n.
/// Anything else is inconclusive.
inline SeriesReport series_verdict(const std::function<double(long)>& terms,
                                   long first, const SeriesConfig& cfg,
                                   std::string criterion_id = "series",
                                   const TermSink& sink = nullptr) {
  if (cfg.n_max < first) {
    throw domain_error("series range is empty: n_max < first index");
  }
  SeriesReport rep;
  rep.criterion_id = std::move(criterion_id);
  rep.first_index = first;
  rep.last_index = cfg.n_max;

  const int W = std::max(2, cfg.window);
  std::deque<std::pair<long, double>> tail_terms;  // last W+1 (n, t_n)

  CompensatedSum sum;
  double decade_mark_sum = 0.0;
  const long decade_mark = std::max(first, cfg.n_max / 10);

  // geometric checkpoint spacing; a degenerate range still advances
  const double span = static_cast<double>(cfg.n_max) / static_cast<double>(first);
  double step = std::pow(span, 1.0 / static_cast<double>(
                                         std::max<std::size_t>(cfg.max_checkpoints, 2) - 1));
  if (!(step > 1.0)) step = 2.0;
  double next_checkpoint = static_cast<double>(first);

  for (long n = first; n <= cfg.n_max; ++n) {
    const double t = terms(n);
    if (!(t >= 0.0)) {
      throw domain_error("series term at n=" + std::to_string(n) +
                         " is negative or NaN: contract violation");
    }
    sum.add(t);
    const double partial = sum.value();
    rep.max_term = std::max(rep.max_term, t);
    if (sink) sink(n, t, partial);

    if (n == decade_mark) decade_mark_sum = partial;

    if (static_cast<double>(n) >= next_checkpoint || n == cfg.n_max) {
      if (rep.partial_sums.empty() || rep.partial_sums.back().first != n) {
        rep.partial_sums.emplace_back(n, partial);
      }
      while (next_checkpoint <= static_cast<double>(n)) next_checkpoint *= step;
    }

    tail_terms.emplace_back(n, t);
    if (static_cast<long>(tail_terms.size()) > W + 1) tail_terms.pop_front();
    rep.last_term = t;
  }
  rep.terms_computed = cfg.n_max - first + 1;
  rep.partial_sum = sum.value();
  rep.last_decade_growth = rep.partial_sum - decade_mark_sum;

  // ---- classification ----
  if (rep.max_term <= cfg.term_floor) {
    rep.verdict = Verdict::converges;
    rep.decided_by = "all-zero";
    rep.upper_bound = rep.partial_sum;
    rep.notes.push_back("every term is numerically zero");
    return rep;
  }

  if (static_cast<long>(tail_terms.size()) < W + 1) {
    rep.notes.push_back("window larger than the probed range");
    return rep;  // inconclusive
  }

  double max_ratio = 0.0;
  double min_raabe = kInf;
  bool ratios_ok = true;
  for (std::size_t i = 0; i + 1 < tail_terms.size(); ++i) {
    const auto [ni, ti] = tail_terms[i];
    const double tj = tail_terms[i + 1].second;
    if (ti <= cfg.term_floor) {
      if (tj > cfg.term_floor) {
        ratios_ok = false;  // resurrecting terms: no geometric story
        max_ratio = kInf;
        min_raabe = kNegInf;
      }
      continue;  // zero-to-zero pair: dead tail, ratio 0
    }
    max_ratio = std::max(max_ratio, tj / ti);
    if (tj > cfg.term_floor) {
      min_raabe =
          std::min(min_raabe, static_cast<double>(ni) * (ti / tj - 1.0));
    }
    // a term dropping to exact zero only helps convergence; no update
  }
  rep.tail_ratio_estimate = max_ratio;
  if (std::isfinite(min_raabe)) rep.raabe_estimate = min_raabe;

  if (ratios_ok && max_ratio <= cfg.ratio_threshold) {
    rep.verdict = Verdict::converges;
    rep.decided_by = "geometric-ratio";
    const double r = cfg.ratio_threshold;
    rep.upper_bound = rep.partial_sum + rep.last_term * r / (1.0 - r);
    return rep;
  }

  if (ratios_ok && min_raabe >= 1.0 + cfg.raabe_margin && rep.last_term > 0.0) {
    rep.verdict = Verdict::converges;
    rep.decided_by = "raabe";
    rep.upper_bound = rep.partial_sum + rep.last_term *
                                            static_cast<double>(cfg.n_max) /
                                            (min_raabe - 1.0);
    rep.notes.push_back(
        "tail bound extrapolates the observed Raabe window beyond the probed range");
    return rep;
  }

  // divergence: exhibit a c/n minorant over the window
  double c = kInf;
  for (const auto& [ni, ti] : tail_terms) {
    c = std::min(c, static_cast<double>(ni) * ti);
  }
  const double m_first =
      static_cast<double>(tail_terms.front().first) * tail_terms.front().second;
  const double m_last =
      static_cast<double>(tail_terms.back().first) * tail_terms.back().second;
  const bool trend_ok = m_last >= m_first * (1.0 - 1e-9);
  if (c > cfg.term_floor && trend_ok &&
      rep.last_decade_growth >= cfg.div_growth_tol) {
    rep.verdict = Verdict::diverges;
    rep.decided_by = "minorant";
    rep.minorant_c = c;
    return rep;
  }

  rep.notes.push_back("no rule fired; raw partial sums attached");
  return rep;
}

}  // namespace bcmax

#endif  // BCMAX_SERIES_HPP
