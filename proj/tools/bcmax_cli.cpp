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

// Scenario-driven front end: parse a scenario, run the selected
// checkers and/or the trajectory simulation, write machine-readable
// reports (JSON, plus per-checker CSV series tables).
//
// Exit codes: 0 success, 1 config error, 2 runtime/numeric error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "bcmax/report.hpp"

namespace fs = std::filesystem;

namespace {

std::string sanitize(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (c == ':' || c == '/' || c == ' ') c = '_';
  }
  return out;
}

class CsvWriters {
 public:
  CsvWriters(fs::path dir, std::string stem)
      : dir_(std::move(dir)), stem_(std::move(stem)) {}

  bcmax::TermSink sink_for(const std::string& checker_id) {
    auto file = std::make_shared<std::ofstream>();
    const fs::path path = dir_ / (stem_ + "_" + sanitize(checker_id) + ".csv");
    file->open(path);
    if (!*file) {
      throw bcmax::error("cannot open CSV output file " + path.string());
    }
    (*file) << "n,term,partial_sum\n";
    file->precision(17);
    written_.push_back(path.string());
    return [file](long n, double term, double partial) {
      (*file) << n << ',' << term << ',' << partial << '\n';
    };
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path dir_;
  std::string stem_;
  std::vector<std::string> written_;
};

void write_ratio_csv(const bcmax::RatioReport& r, const fs::path& path) {
  std::ofstream out(path);
  out.precision(17);
  out << "n,k,ratio\n";
  for (const auto& p : r.probes) {
    out << p.n << ',' << p.k << ',' << p.ratio << '\n';
  }
}

void write_remark_csv(const bcmax::RemarkTrend& r, const fs::path& path) {
  std::ofstream out(path);
  out.precision(17);
  out << "n,K,S,head,tail_bound\n";
  for (const auto& p : r.S_values) {
    out << p.n << ',' << p.K << ',' << p.S << ',' << p.head << ','
        << p.tail_bound << '\n';
  }
}

int run_command(const std::string& scenario_file, const std::string& builtin,
                std::optional<std::uint64_t> seed, std::optional<long> paths,
                std::optional<long> n_max, std::optional<std::string> out_dir,
                std::optional<std::string> format) {
  bcmax::ScenarioConfig cfg = builtin.empty()
                                  ? bcmax::parse_scenario_file(scenario_file)
                                  : bcmax::builtin_scenario(builtin);
  if (seed) cfg.seed = *seed;
  if (paths) cfg.sim_paths = *paths;
  if (n_max) {
    cfg.series_n_max = *n_max;
    cfg.sim_n_max = *n_max;
    for (auto it = cfg.record_grid.begin(); it != cfg.record_grid.end();) {
      if (*it > *n_max) it = cfg.record_grid.erase(it); else ++it;
    }
    if (cfg.has_simulation && cfg.record_grid.empty()) {
      cfg.record_grid = {cfg.sim_n_max};
    }
  }
  if (out_dir) cfg.out_dir = *out_dir;
  if (format) {
    if (*format == "json") cfg.format = bcmax::OutputFormat::json;
    else if (*format == "csv") cfg.format = bcmax::OutputFormat::csv;
    else if (*format == "both") cfg.format = bcmax::OutputFormat::both;
    else throw bcmax::config_error("unknown format '" + *format + "'", "--format");
  }

  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  const bool want_csv = cfg.format != bcmax::OutputFormat::json;
  const bool want_json = cfg.format != bcmax::OutputFormat::csv;

  std::unique_ptr<CsvWriters> csv;
  bcmax::TermSinkFactory factory;
  if (want_csv) {
    csv = std::make_unique<CsvWriters>(dir, cfg.name);
    factory = [&csv](const std::string& id) { return csv->sink_for(id); };
  }

  const bcmax::Report report = bcmax::run_scenario(cfg, factory);

  if (want_csv) {
    if (report.ratio_report) {
      write_ratio_csv(*report.ratio_report,
                      dir / (cfg.name + "_ratio.csv"));
    }
    if (report.remark_report) {
      write_remark_csv(*report.remark_report,
                       dir / (cfg.name + "_remark.csv"));
    }
  }
  if (want_json) {
    const fs::path path = dir / (cfg.name + "_report.json");
    std::ofstream out(path);
    if (!out) throw bcmax::error("cannot open report file " + path.string());
    out << bcmax::report_to_json(report).dump(2) << "\n";
    std::cout << "report: " << path.string() << "\n";
  }

  // one-line console summary per checker
  for (const auto& s : report.series_reports) {
    std::cout << s.criterion_id << ": " << bcmax::to_string(s.verdict)
              << (s.conclusion ? "  [" + *s.conclusion + "]" : "") << "\n";
  }
  for (const auto& s : report.stepanov_reports) {
    std::cout << "stepanov:" << s.k << ": " << bcmax::to_string(s.verdict)
              << (s.conclusion ? "  [" + *s.conclusion + "]" : "") << "\n";
  }
  if (report.ratio_report) {
    std::cout << "ratio: " << bcmax::to_string(report.ratio_report->verdict)
              << "  q_hat=" << report.ratio_report->q_hat
              << (report.ratio_report->conclusion
                      ? "  [" + *report.ratio_report->conclusion + "]"
                      : "")
              << "\n";
  }
  if (report.remark_report) {
    std::cout << "remark: " << bcmax::to_string(report.remark_report->classification)
              << "  slope=" << report.remark_report->slope << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probability diagnostics for threshold events on running maxima"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list builtin scenarios");

  auto* run_cmd = app.add_subcommand("run", "run a scenario file or builtin");
  std::string scenario_file;
  std::string builtin;
  run_cmd->add_option("scenario", scenario_file, "scenario config file");
  run_cmd->add_option("--builtin", builtin, "builtin scenario name");
  std::optional<std::uint64_t> seed;
  std::optional<long> paths, n_max;
  std::optional<std::string> out_dir, format;
  run_cmd->add_option("--seed", seed, "override master seed");
  run_cmd->add_option("--paths", paths, "override simulation path count");
  run_cmd->add_option("--n-max", n_max, "override series/simulation horizon");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--format", format, "json | csv | both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& b : bcmax::list_builtins()) {
        std::cout << b.name << "  [" << b.transform << "]  " << b.description
                  << "\n";
      }
      return 0;
    }
    if (run_cmd->parsed()) {
      if (scenario_file.empty() == builtin.empty()) {
        throw bcmax::config_error(
            "give exactly one of <scenario file> or --builtin <name>", "run");
      }
      return run_command(scenario_file, builtin, seed, paths, n_max, out_dir,
                         format);
    }
  } catch (const bcmax::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const bcmax::threshold_order_error& e) {
    // a scenario whose event family is malformed, found at compute time
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
