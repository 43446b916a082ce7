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

#ifndef BCMAX_SIMULATOR_HPP
#define BCMAX_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "bcmax/distribution.hpp"
#include "bcmax/errors.hpp"
#include "bcmax/event_engine.hpp"
#include "bcmax/rng.hpp"
#include "bcmax/thresholds.hpp"

namespace bcmax {

// Streaming Monte-Carlo over running-maximum trajectories.  A path is
// never materialized: each worker streams draws, keeps the running max
// in a register, and records only grid values / window flags.  Every
// draw is a pure function of (master seed, path index, position), so
// results are bit-identical for any worker count and merge order.

struct SimulationConfig {
  Distribution distribution = Distribution::uniform01();
  long n_max = 1000;
  long paths = 1000;
  std::uint64_t master_seed = 1;
  std::vector<long> record_grid;  ///< sorted, distinct, in [1, n_max]
  int workers = 0;                ///< 0: hardware concurrency

  void validate() const {
    if (paths < 1) throw domain_error("simulation needs paths >= 1");
    if (record_grid.empty()) throw domain_error("record grid must be nonempty");
    long prev = 0;
    for (const long g : record_grid) {
      if (g <= prev) throw domain_error("record grid must be sorted, distinct, >= 1");
      prev = g;
    }
    if (record_grid.back() > n_max) {
      throw domain_error("record grid exceeds n_max");
    }
  }
};

struct TrajectorySummary {
  long n = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
};

struct TrajectoryBatch {
  std::vector<long> record_grid;
  long paths = 0;
  /// Row-major: value(path, grid_index).
  std::vector<double> values;

  double at(long path, std::size_t grid_index) const {
    return values[static_cast<std::size_t>(path) * record_grid.size() +
                  grid_index];
  }

  /// Per-grid-index statistics over paths, computed in a fixed order
  /// after the merge (independent of how paths were distributed).
  std::vector<TrajectorySummary> summary() const {
    std::vector<TrajectorySummary> out;
    out.reserve(record_grid.size());
    std::vector<double> column(static_cast<std::size_t>(paths));
    for (std::size_t g = 0; g < record_grid.size(); ++g) {
      CompensatedSum sum;
      double lo = kInf, hi = -kInf;
      for (long p = 0; p < paths; ++p) {
        const double v = at(p, g);
        column[static_cast<std::size_t>(p)] = v;
        sum.add(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      auto mid = column.begin() + column.size() / 2;
      std::nth_element(column.begin(), mid, column.end());
      out.push_back({record_grid[g], sum.value() / static_cast<double>(paths),
                     lo, hi, *mid});
    }
    return out;
  }
};

namespace detail {

inline int resolve_workers(int requested, long items) {
  int w = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  return static_cast<int>(std::min<long>(w, std::max<long>(items, 1)));
}

/// Static chunking over [0, total); fn(first, last, chunk_index).
template <typename Fn>
void parallel_chunks(long total, int workers, Fn&& fn) {
  if (workers <= 1 || total < 2) {
    fn(0L, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = static_cast<long>(w) * chunk;
    const long hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi, w] { fn(lo, hi, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Streams every path to max(record_grid) and records the running
/// maximum at the grid indices.  Output depends only on
/// (master_seed, path index), never on the worker count.
inline TrajectoryBatch simulate_paths(const SimulationConfig& config) {
  config.validate();
  TrajectoryBatch batch;
  batch.record_grid = config.record_grid;
  batch.paths = config.paths;
  batch.values.resize(static_cast<std::size_t>(config.paths) *
                      config.record_grid.size());

  const long horizon = config.record_grid.back();
  const Distribution& d = config.distribution;
  const bool is_uniform = d.kind() == DistributionKind::uniform01;

  const int workers = detail::resolve_workers(config.workers, config.paths);
  detail::parallel_chunks(config.paths, workers, [&](long lo, long hi, int) {
    for (long p = lo; p < hi; ++p) {
      RngStream rng(config.master_seed, static_cast<std::uint64_t>(p));
      double running_max = -kInf;
      std::size_t g = 0;
      double* row = batch.values.data() +
                    static_cast<std::size_t>(p) * config.record_grid.size();
      for (long i = 1; i <= horizon; ++i) {
        const double u = rng.next_u01();
        const double x = is_uniform ? u : d.quantile(u);
        if (x > running_max) running_max = x;
        if (config.record_grid[g] == i) {
          row[g] = running_max;
          ++g;
        }
      }
    }
  });
  return batch;
}

/// Applies the transform pointwise at each recorded index.
inline TrajectoryBatch transform_trajectory(const TrajectoryBatch& batch,
                                            const TransformFamily& family) {
  TrajectoryBatch out;
  out.record_grid = batch.record_grid;
  out.paths = batch.paths;
  out.values.resize(batch.values.size());
  for (std::size_t g = 0; g < batch.record_grid.size(); ++g) {
    const long n = batch.record_grid[g];
    // validate the index once per column (the power map rejects n=1)
    family.apply(n, 1.0);
    for (long p = 0; p < batch.paths; ++p) {
      out.values[static_cast<std::size_t>(p) * out.record_grid.size() + g] =
          family.apply(n, batch.at(p, g));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Event-frequency oracles.  These re-derive compound-event probabilities
// by checking the defining inequalities on raw trajectories -- no
// factorization, no recursion -- which is what makes them independent
// of the closed forms they validate.

struct OracleEstimate {
  double point = 0.0;
  long long reps = 0;
  double std_err = 0.0;  ///< binomial sqrt(p(1-p)/reps)

  static OracleEstimate from_hits(long long hits, long long reps) {
    OracleEstimate e;
    e.reps = reps;
    e.point = static_cast<double>(hits) / static_cast<double>(reps);
    e.std_err = std::sqrt(e.point * (1.0 - e.point) / static_cast<double>(reps));
    return e;
  }
};

/// Which first-occurrence event a run query means.
enum class RunEventKind {
  banded,        ///< consecutive bands x_{n+j} < M_{n+j} <= x_{n+j+1}, then A
  complemented,  ///< literal A_n^c ... A_{n+k-1}^c A_{n+k}
};

/// Everything one trajectory pass can answer about a window at n.
struct WindowEventSpec {
  long n = 1;
  long k_max = 0;              ///< run events for k = 0..k_max (both kinds)
  bool event_then_fail = false;
  std::vector<long> joint_ks;  ///< joint events A_n and A_{n+k}
  std::vector<long> union_Ks;  ///< unions over [n, n+K]

  long max_offset() const {
    long m = k_max;
    if (event_then_fail) m = std::max(m, 1L);
    for (const long k : joint_ks) m = std::max(m, k);
    for (const long K : union_Ks) m = std::max(m, K);
    return m;
  }
};

struct WindowEventCounts {
  long long reps = 0;
  std::vector<long long> banded_hits;        ///< k = 0..k_max
  std::vector<long long> complemented_hits;  ///< k = 0..k_max
  long long event_then_fail_hits = 0;
  std::vector<long long> joint_hits;         ///< parallel to joint_ks
  std::vector<long long> union_hits;         ///< parallel to union_Ks
};

/// One streaming pass over `reps` independent trajectory prefixes,
/// counting every requested event.  Replicate r draws from the derived
/// stream (seed, r), so counts are worker-count independent.
inline WindowEventCounts mc_window_events(const Distribution& d,
                                          const ThresholdSequence& thr,
                                          const WindowEventSpec& spec,
                                          long long reps, std::uint64_t seed,
                                          int workers = 0) {
  if (reps < 1) throw domain_error("oracle needs reps >= 1");
  const long n = spec.n;
  const long moff = spec.max_offset();
  // thresholds once, with the order check
  const detail::Window w = detail::fetch_window(d, thr, n, moff + 1);

  const int nw = detail::resolve_workers(workers, static_cast<long>(
                                                      std::min<long long>(reps, 1 << 20)));
  struct Local {
    std::vector<long long> banded, complemented, joint, unions;
    long long petf = 0;
  };
  std::vector<Local> locals(static_cast<std::size_t>(nw));
  for (auto& l : locals) {
    l.banded.assign(static_cast<std::size_t>(spec.k_max + 1), 0);
    l.complemented.assign(static_cast<std::size_t>(spec.k_max + 1), 0);
    l.joint.assign(spec.joint_ks.size(), 0);
    l.unions.assign(spec.union_Ks.size(), 0);
  }

  const bool is_uniform = d.kind() == DistributionKind::uniform01;
  detail::parallel_chunks(
      static_cast<long>(reps), nw, [&](long lo, long hi, int widx) {
        Local& L = locals[static_cast<std::size_t>(widx)];
        std::vector<double> wm(static_cast<std::size_t>(moff + 1));
        for (long r = lo; r < hi; ++r) {
          RngStream rng(seed, static_cast<std::uint64_t>(r));
          double running_max = -kInf;
          for (long i = 1; i < n; ++i) {
            const double u = rng.next_u01();
            const double x = is_uniform ? u : d.quantile(u);
            if (x > running_max) running_max = x;
          }
          for (long j = 0; j <= moff; ++j) {
            const double u = rng.next_u01();
            const double x = is_uniform ? u : d.quantile(u);
            if (x > running_max) running_max = x;
            wm[static_cast<std::size_t>(j)] = running_max;
          }

          // run events, both kinds
          bool banded_prefix = true;        // bands held for all j < k
          bool complemented_prefix = true;  // M_{n+j} > x_{n+j} for all j < k
          for (long k = 0; k <= spec.k_max; ++k) {
            const double m_k = wm[static_cast<std::size_t>(k)];
            const bool a_k = m_k <= w.xv(n + k);
            if (banded_prefix && a_k) {
              ++L.banded[static_cast<std::size_t>(k)];
            }
            if (complemented_prefix && a_k) {
              ++L.complemented[static_cast<std::size_t>(k)];
            }
            const bool in_band =
                k + 1 <= moff && m_k > w.xv(n + k) && m_k <= w.xv(n + k + 1);
            banded_prefix = banded_prefix && in_band;
            complemented_prefix = complemented_prefix && !a_k;
            if (!banded_prefix && !complemented_prefix) break;
          }

          if (spec.event_then_fail) {
            if (wm[0] <= w.xv(n) && wm[1] > w.xv(n + 1)) ++L.petf;
          }
          for (std::size_t ji = 0; ji < spec.joint_ks.size(); ++ji) {
            const long k = spec.joint_ks[ji];
            if (wm[0] <= w.xv(n) &&
                wm[static_cast<std::size_t>(k)] <= w.xv(n + k)) {
              ++L.joint[ji];
            }
          }
          for (std::size_t ui = 0; ui < spec.union_Ks.size(); ++ui) {
            const long K = spec.union_Ks[ui];
            bool any = false;
            for (long j = 0; j <= K; ++j) {
              if (wm[static_cast<std::size_t>(j)] <= w.xv(n + j)) {
                any = true;
                break;
              }
            }
            if (any) ++L.unions[ui];
          }
        }
      });

  WindowEventCounts out;
  out.reps = reps;
  out.banded_hits.assign(static_cast<std::size_t>(spec.k_max + 1), 0);
  out.complemented_hits.assign(static_cast<std::size_t>(spec.k_max + 1), 0);
  out.joint_hits.assign(spec.joint_ks.size(), 0);
  out.union_hits.assign(spec.union_Ks.size(), 0);
  for (const Local& L : locals) {
    for (std::size_t i = 0; i < out.banded_hits.size(); ++i) {
      out.banded_hits[i] += L.banded[i];
      out.complemented_hits[i] += L.complemented[i];
    }
    out.event_then_fail_hits += L.petf;
    for (std::size_t i = 0; i < out.joint_hits.size(); ++i) {
      out.joint_hits[i] += L.joint[i];
    }
    for (std::size_t i = 0; i < out.union_hits.size(); ++i) {
      out.union_hits[i] += L.unions[i];
    }
  }
  return out;
}

/// Frequency of one run event from raw trajectories.
inline OracleEstimate mc_run_prob(const Distribution& d,
                                  const ThresholdSequence& thr, long n, long k,
                                  long long reps, std::uint64_t seed,
                                  RunEventKind kind = RunEventKind::banded,
                                  int workers = 0) {
  WindowEventSpec spec;
  spec.n = n;
  spec.k_max = k;
  const WindowEventCounts counts =
      mc_window_events(d, thr, spec, reps, seed, workers);
  const auto& hits = (kind == RunEventKind::banded) ? counts.banded_hits
                                                    : counts.complemented_hits;
  return OracleEstimate::from_hits(hits[static_cast<std::size_t>(k)], reps);
}

/// Fraction of paths with at least one A_j, j in [n, n+K], streaming
/// each path once and checking M_j <= x_j at every window index.
inline OracleEstimate mc_window_union(const Distribution& d,
                                      const ThresholdSequence& thr, long n,
                                      long K, long long paths,
                                      std::uint64_t seed, int workers = 0) {
  WindowEventSpec spec;
  spec.n = n;
  spec.union_Ks = {K};
  const WindowEventCounts counts =
      mc_window_events(d, thr, spec, paths, seed, workers);
  return OracleEstimate::from_hits(counts.union_hits[0], paths);
}

}  // namespace bcmax

#endif  // BCMAX_SIMULATOR_HPP
