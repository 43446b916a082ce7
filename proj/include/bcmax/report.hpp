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

#ifndef BCMAX_REPORT_HPP
#define BCMAX_REPORT_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcmax/criteria.hpp"
#include "bcmax/scenario.hpp"
#include "bcmax/simulator.hpp"
#include "bcmax/version.hpp"

namespace bcmax {

using json = nlohmann::ordered_json;

/// Everything a scenario run produced.  Re-running with an identical
/// config and tool version reproduces every numeric payload bit for bit;
/// wall_clock_ms is the one volatile field.
struct Report {
  ScenarioConfig scenario;

  std::vector<SeriesReport> series_reports;
  std::vector<StepanovReport> stepanov_reports;
  std::optional<RatioReport> ratio_report;
  std::optional<RemarkTrend> remark_report;

  std::vector<TrajectorySummary> trajectory_summary;
  std::vector<TrajectorySummary> transformed_summary;

  double wall_clock_ms = 0.0;
};

/// Factory for per-checker term observers; the CLI hands out CSV
/// writers here so full series tables stream to disk without living in
/// the report.
using TermSinkFactory = std::function<TermSink(const std::string& checker_id)>;

inline Report run_scenario(const ScenarioConfig& cfg,
                           const TermSinkFactory& sink_factory = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.scenario = cfg;

  const ThresholdSequence thr = cfg.make_thresholds();
  const NRange range{thr.n_min(), cfg.series_n_max};
  auto sink_for = [&](const std::string& id) -> TermSink {
    return sink_factory ? sink_factory(id) : TermSink{};
  };

  for (const CheckerSelection& sel : cfg.checkers) {
    switch (sel.kind) {
      case CheckerKind::bc1:
        rep.series_reports.push_back(check_bc1(cfg.distribution, thr, range, {},
                                               sink_for("bc1")));
        break;
      case CheckerKind::barndorff:
        rep.series_reports.push_back(check_barndorff(
            cfg.distribution, thr, range, {}, sink_for("barndorff")));
        break;
      case CheckerKind::bs:
        rep.series_reports.push_back(check_bs(cfg.distribution, thr, sel.param,
                                              range, {},
                                              sink_for(sel.spelling)));
        break;
      case CheckerKind::stepanov:
        rep.stepanov_reports.push_back(check_stepanov(
            cfg.distribution, thr, sel.param, range, {},
            sink_for(sel.spelling + ":prob"), sink_for(sel.spelling + ":joint"),
            sink_for(sel.spelling + ":gap")));
        break;
      case CheckerKind::ratio: {
        RatioCheckConfig rc;
        rc.n_grid = cfg.ratio_n_grid;
        rc.k_max = cfg.ratio_k_max;
        rep.ratio_report = check_ratio(cfg.distribution, thr, rc);
        break;
      }
      case CheckerKind::remark:
        rep.remark_report =
            remark_limit(cfg.distribution, thr, cfg.remark_n_grid);
        break;
    }
  }

  if (cfg.has_simulation) {
    SimulationConfig sim;
    sim.distribution = cfg.distribution;
    sim.n_max = cfg.sim_n_max;
    sim.paths = cfg.sim_paths;
    sim.master_seed = cfg.seed;
    sim.record_grid = cfg.record_grid;
    if (sim.record_grid.empty()) {
      for (long g = 10; g <= sim.n_max; g *= 10) sim.record_grid.push_back(g);
      if (sim.record_grid.empty()) sim.record_grid.push_back(sim.n_max);
    }
    const TrajectoryBatch batch = simulate_paths(sim);
    rep.trajectory_summary = batch.summary();
    if (cfg.event_kind == EventSpecKind::transform) {
      const TrajectoryBatch transformed =
          transform_trajectory(batch, cfg.make_family());
      rep.transformed_summary = transformed.summary();
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_clock_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// JSON serialization.

namespace detail {

inline json to_json(const SeriesReport& r) {
  json j;
  j["id"] = r.criterion_id;
  j["type"] = "series";
  j["verdict"] = to_string(r.verdict);
  j["decided_by"] = r.decided_by;
  if (r.conclusion) j["conclusion"] = *r.conclusion;
  j["first_index"] = r.first_index;
  j["last_index"] = r.last_index;
  j["terms_computed"] = r.terms_computed;
  j["partial_sum"] = r.partial_sum;
  j["last_term"] = r.last_term;
  j["max_term"] = r.max_term;
  j["last_decade_growth"] = r.last_decade_growth;
  if (r.tail_ratio_estimate) j["tail_ratio_estimate"] = *r.tail_ratio_estimate;
  if (r.raabe_estimate) j["raabe_estimate"] = *r.raabe_estimate;
  if (r.minorant_c) j["minorant_c"] = *r.minorant_c;
  if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
  if (r.side_condition_holds) j["side_condition_holds"] = *r.side_condition_holds;
  if (r.side_final_value) j["side_final_value"] = *r.side_final_value;
  if (!r.notes.empty()) j["notes"] = r.notes;
  json sums = json::array();
  for (const auto& [n, s] : r.partial_sums) sums.push_back(json::array({n, s}));
  j["partial_sums"] = std::move(sums);
  return j;
}

inline json to_json(const StepanovReport& r) {
  json j;
  j["id"] = "stepanov:" + std::to_string(r.k);
  j["type"] = "three-series";
  j["verdict"] = to_string(r.verdict);
  if (r.conclusion) j["conclusion"] = *r.conclusion;
  j["k"] = r.k;
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["prob_series"] = to_json(r.prob_series);
  j["joint_series"] = to_json(r.joint_series);
  j["gap_series"] = to_json(r.gap_series);
  return j;
}

inline json to_json(const RatioReport& r) {
  json j;
  j["id"] = r.criterion_id;
  j["type"] = "ratio";
  j["verdict"] = to_string(r.verdict);
  if (r.conclusion) j["conclusion"] = *r.conclusion;
  j["q_hat"] = r.q_hat;
  j["epsilon"] = r.epsilon;
  j["probe_n"] = r.probe_n;
  j["bound_value"] = r.bound_value;
  j["bound_value_corrected"] = r.bound_value_corrected;
  j["p_a_at_probe"] = r.p_a_at_probe;
  j["run1_at_probe"] = r.run1_at_probe;
  if (r.side_condition_holds) j["side_condition_holds"] = *r.side_condition_holds;
  j["row_max"] = r.row_max;
  if (!r.notes.empty()) j["notes"] = r.notes;
  json probes = json::array();
  for (const auto& p : r.probes) {
    probes.push_back(json::array({p.n, p.k, p.ratio}));
  }
  j["probes"] = std::move(probes);
  return j;
}

inline json to_json(const RemarkTrend& r) {
  json j;
  j["id"] = "remark";
  j["type"] = "trend";
  j["classification"] = to_string(r.classification);
  j["slope"] = r.slope;
  if (r.a) j["a"] = *r.a;
  j["certified"] = r.certified;
  j["slope_tol"] = r.slope_tol;
  j["stabilize_rel_tol"] = r.stabilize_rel_tol;
  if (!r.notes.empty()) j["notes"] = r.notes;
  json pts = json::array();
  for (const auto& p : r.S_values) {
    json pj;
    pj["n"] = p.n;
    pj["K"] = p.K;
    pj["S"] = p.S;
    pj["head"] = p.head;
    pj["tail_bound"] = p.tail_bound;
    pts.push_back(std::move(pj));
  }
  j["S_values"] = std::move(pts);
  return j;
}

inline json to_json(const std::vector<TrajectorySummary>& summary) {
  json arr = json::array();
  for (const auto& s : summary) {
    json j;
    j["n"] = s.n;
    j["mean"] = s.mean;
    j["min"] = s.min;
    j["max"] = s.max;
    j["median"] = s.median;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace detail

inline json report_to_json(const Report& rep) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["rng_version"] = kRngVersion;

  json scenario;
  scenario["name"] = rep.scenario.name;
  scenario["distribution"] = rep.scenario.distribution.name();
  scenario["events"] = rep.scenario.event_description();
  scenario["config_text"] = rep.scenario.canonical_text();
  j["scenario"] = std::move(scenario);

  json checkers = json::array();
  for (const auto& s : rep.series_reports) checkers.push_back(detail::to_json(s));
  for (const auto& s : rep.stepanov_reports) checkers.push_back(detail::to_json(s));
  if (rep.ratio_report) checkers.push_back(detail::to_json(*rep.ratio_report));
  if (rep.remark_report) checkers.push_back(detail::to_json(*rep.remark_report));
  j["checkers"] = std::move(checkers);

  if (rep.scenario.has_simulation) {
    json sim;
    sim["paths"] = rep.scenario.sim_paths;
    sim["n_max"] = rep.scenario.sim_n_max;
    sim["master_seed"] = rep.scenario.seed;
    sim["per_path_seed"] = "derived from (master_seed, path_index)";
    sim["trajectory"] = detail::to_json(rep.trajectory_summary);
    if (!rep.transformed_summary.empty()) {
      sim["transformed"] = detail::to_json(rep.transformed_summary);
    }
    j["simulation"] = std::move(sim);
  }

  j["wall_clock_ms"] = rep.wall_clock_ms;
  return j;
}

}  // namespace bcmax

#endif  // BCMAX_REPORT_HPP
