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

#ifndef BCMAX_SCENARIO_HPP
#define BCMAX_SCENARIO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcmax/distribution.hpp"
#include "bcmax/errors.hpp"
#include "bcmax/expression.hpp"
#include "bcmax/thresholds.hpp"

namespace bcmax {

// Scenario files: flat "key = value" lines grouped by [section], with
// '#' comments.  Sections: top level (name, distribution, n_min),
// [events], [checkers], [simulation], [output].  Expressions in n use
// the closed grammar from expression.hpp.

enum class CheckerKind { bc1, barndorff, bs, stepanov, ratio, remark };

struct CheckerSelection {
  CheckerKind kind = CheckerKind::bc1;
  long param = 0;  ///< m for bs, k for stepanov
  std::string spelling;

  static CheckerSelection parse(const std::string& raw,
                                const std::string& where) {
    CheckerSelection c;
    c.spelling = raw;
    auto need_param = [&](const std::string& prefix) -> long {
      const std::string num = raw.substr(prefix.size());
      try {
        std::size_t used = 0;
        const long v = std::stol(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
        return v;
      } catch (const std::exception&) {
        throw config_error("bad checker parameter in '" + raw + "'", where);
      }
    };
    if (raw == "bc1") {
      c.kind = CheckerKind::bc1;
    } else if (raw == "barndorff") {
      c.kind = CheckerKind::barndorff;
    } else if (raw.rfind("bs:", 0) == 0) {
      c.kind = CheckerKind::bs;
      c.param = need_param("bs:");
      if (c.param < 0) throw config_error("bs run length must be >= 0", where);
    } else if (raw.rfind("stepanov:", 0) == 0) {
      c.kind = CheckerKind::stepanov;
      c.param = need_param("stepanov:");
      if (c.param < 1) {
        throw config_error("stepanov offset must be >= 1", where);
      }
    } else if (raw == "ratio") {
      c.kind = CheckerKind::ratio;
    } else if (raw == "remark") {
      c.kind = CheckerKind::remark;
    } else {
      throw config_error(
          "unknown checker '" + raw +
              "' (expected bc1 | barndorff | bs:<m> | stepanov:<k> | ratio | remark)",
          where);
    }
    return c;
  }
};

enum class EventSpecKind { explicit_thresholds, transform };
enum class OutputFormat { json, csv, both };

struct ScenarioConfig {
  std::string name = "scenario";
  Distribution distribution = Distribution::uniform01();
  long n_min = -1;  ///< -1: family default

  EventSpecKind event_kind = EventSpecKind::transform;
  std::optional<Expression> thresholds_expr;  ///< explicit x_n
  TransformKind transform = TransformKind::identity;
  std::optional<Expression> scale_expr;       ///< a_n for the scale map
  double level = 1.0;

  std::vector<CheckerSelection> checkers;
  long series_n_max = 100000;
  std::vector<long> ratio_n_grid{100, 1000, 10000};
  long ratio_k_max = 8;
  std::vector<long> remark_n_grid{1000, 10000, 100000};

  bool has_simulation = false;
  long sim_paths = 1000;
  long sim_n_max = 100000;
  std::uint64_t seed = 1;
  std::vector<long> record_grid;

  std::string out_dir = "out";
  OutputFormat format = OutputFormat::json;

  /// Materializes the event family described by [events].
  ThresholdSequence make_thresholds() const {
    switch (event_kind) {
      case EventSpecKind::explicit_thresholds: {
        const Expression e = *thresholds_expr;
        return ThresholdSequence::explicit_sequence(
            [e](long n) { return e.eval(n); }, n_min < 0 ? 1 : n_min,
            "x_n = " + e.text());
      }
      case EventSpecKind::transform: {
        TransformFamily fam = make_family();
        return ThresholdSequence::from_transform(std::move(fam), level, n_min);
      }
    }
    throw domain_error("unreachable event kind");
  }

  TransformFamily make_family() const {
    switch (transform) {
      case TransformKind::identity: return TransformFamily::identity();
      case TransformKind::power: return TransformFamily::power();
      case TransformKind::scale: {
        const Expression e = *scale_expr;
        return TransformFamily::scale([e](long n) { return e.eval(n); },
                                      "scale a_n = " + e.text());
      }
    }
    throw domain_error("unreachable transform kind");
  }

  std::string event_description() const {
    if (event_kind == EventSpecKind::explicit_thresholds) {
      return "x_n = " + thresholds_expr->text();
    }
    switch (transform) {
      case TransformKind::identity:
        return "identity transform, level " + format_double(level);
      case TransformKind::power:
        return "power transform (exponent n/ln n), level " + format_double(level);
      case TransformKind::scale:
        return "scale transform a_n = " + scale_expr->text() + ", level " +
               format_double(level);
    }
    return "?";
  }

  /// Normalized config text; parsing it reproduces this config.
  std::string canonical_text() const {
    std::ostringstream os;
    os << "name = " << name << "\n";
    os << "distribution = " << distribution.name() << "\n";
    if (n_min >= 0) os << "n_min = " << n_min << "\n";
    os << "\n[events]\n";
    if (event_kind == EventSpecKind::explicit_thresholds) {
      os << "thresholds = " << thresholds_expr->text() << "\n";
    } else {
      os << "transform = " << transform_name(transform) << "\n";
      if (transform == TransformKind::scale) {
        os << "scale_sequence = " << scale_expr->text() << "\n";
      }
      os << "level = " << format_double(level) << "\n";
    }
    if (!checkers.empty()) {
      os << "\n[checkers]\n";
      os << "run = ";
      for (std::size_t i = 0; i < checkers.size(); ++i) {
        os << (i ? ", " : "") << checkers[i].spelling;
      }
      os << "\n";
      os << "series_n_max = " << series_n_max << "\n";
      os << "ratio_n_grid = " << join(ratio_n_grid) << "\n";
      os << "ratio_k_max = " << ratio_k_max << "\n";
      os << "remark_n_grid = " << join(remark_n_grid) << "\n";
    }
    if (has_simulation) {
      os << "\n[simulation]\n";
      os << "paths = " << sim_paths << "\n";
      os << "n_max = " << sim_n_max << "\n";
      os << "seed = " << seed << "\n";
      if (!record_grid.empty()) {
        os << "record_grid = " << join(record_grid) << "\n";
      }
    }
    os << "\n[output]\n";
    os << "dir = " << out_dir << "\n";
    os << "format = " << format_name(format) << "\n";
    return os.str();
  }

  void validate(const std::string& origin) const {
    if (checkers.empty() && !has_simulation) {
      throw config_error("scenario needs at least one checker or a [simulation] block",
                         origin);
    }
    if (event_kind == EventSpecKind::explicit_thresholds && !thresholds_expr) {
      throw config_error("[events] needs thresholds = <expression in n>", origin);
    }
    if (event_kind == EventSpecKind::transform &&
        transform == TransformKind::scale && !scale_expr) {
      throw config_error("scale transform needs scale_sequence = <expression in n>",
                         origin);
    }
    if (series_n_max < 1) {
      throw config_error("series_n_max must be >= 1", origin);
    }
    bool wants_ratio = false, wants_remark = false;
    for (const auto& c : checkers) {
      wants_ratio |= c.kind == CheckerKind::ratio;
      wants_remark |= c.kind == CheckerKind::remark;
    }
    if (wants_ratio) {
      if (ratio_k_max < 1) throw config_error("ratio_k_max must be >= 1", origin);
      if (ratio_n_grid.empty()) throw config_error("ratio_n_grid is empty", origin);
      for (std::size_t i = 1; i < ratio_n_grid.size(); ++i) {
        if (ratio_n_grid[i] <= ratio_n_grid[i - 1]) {
          throw config_error("ratio_n_grid must be strictly increasing", origin);
        }
      }
    }
    if (wants_remark && remark_n_grid.size() < 2) {
      throw config_error("remark_n_grid needs at least two indices", origin);
    }
  }

  static const char* transform_name(TransformKind k) {
    switch (k) {
      case TransformKind::identity: return "identity";
      case TransformKind::power: return "power";
      case TransformKind::scale: return "scale";
    }
    return "?";
  }
  static const char* format_name(OutputFormat f) {
    switch (f) {
      case OutputFormat::json: return "json";
      case OutputFormat::csv: return "csv";
      case OutputFormat::both: return "both";
    }
    return "?";
  }
  static std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }
  template <typename T>
  static std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
  }
};

namespace detail {

struct IniLine {
  std::string section;
  std::string key;
  std::string value;
  int line_no = 0;
};

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == ',') {
      const std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  const std::string t = trim(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

inline std::vector<IniLine> parse_ini(const std::string& text,
                                      const std::string& origin) {
  std::vector<IniLine> lines;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error("unterminated section header", where);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error("expected 'key = value'", where);
    }
    IniLine entry;
    entry.section = section;
    entry.key = trim(line.substr(0, eq));
    entry.value = trim(line.substr(eq + 1));
    entry.line_no = line_no;
    if (entry.key.empty()) throw config_error("empty key", where);
    lines.push_back(std::move(entry));
  }
  return lines;
}

inline long parse_long(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("bad integer '" + v + "'", where);
  }
}

inline double parse_double(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("bad number '" + v + "'", where);
  }
}

inline std::vector<long> parse_long_list(const std::string& v,
                                         const std::string& where) {
  std::vector<long> out;
  for (const std::string& item : split_list(v)) {
    out.push_back(parse_long(item, where));
  }
  if (out.empty()) throw config_error("empty list", where);
  return out;
}

}  // namespace detail

/// Parses scenario text; `origin` labels error locations ("file" part of
/// "file:line").
inline ScenarioConfig parse_scenario_text(const std::string& text,
                                          const std::string& origin = "scenario") {
  ScenarioConfig cfg;
  bool saw_events = false;
  bool saw_explicit = false, saw_transform = false;
  for (const auto& e : detail::parse_ini(text, origin)) {
    const std::string where = origin + ":" + std::to_string(e.line_no);
    if (e.section.empty()) {
      if (e.key == "name") {
        cfg.name = e.value;
      } else if (e.key == "distribution") {
        try {
          cfg.distribution = Distribution::parse(e.value);
        } catch (const domain_error& err) {
          throw config_error(err.what(), where);
        }
      } else if (e.key == "n_min") {
        cfg.n_min = detail::parse_long(e.value, where);
      } else {
        throw config_error("unknown top-level key '" + e.key + "'", where);
      }
    } else if (e.section == "events") {
      saw_events = true;
      if (e.key == "thresholds") {
        try {
          cfg.thresholds_expr = Expression::parse(e.value);
        } catch (const config_error& err) {
          throw config_error(std::string("bad threshold expression: ") + err.what(), where);
        }
        cfg.event_kind = EventSpecKind::explicit_thresholds;
        saw_explicit = true;
      } else if (e.key == "transform") {
        if (e.value == "identity") cfg.transform = TransformKind::identity;
        else if (e.value == "power") cfg.transform = TransformKind::power;
        else if (e.value == "scale") cfg.transform = TransformKind::scale;
        else throw config_error("unknown transform '" + e.value +
                                "' (identity | power | scale)", where);
        cfg.event_kind = EventSpecKind::transform;
        saw_transform = true;
      } else if (e.key == "scale_sequence") {
        try {
          cfg.scale_expr = Expression::parse(e.value);
        } catch (const config_error& err) {
          throw config_error(std::string("bad scale expression: ") + err.what(), where);
        }
      } else if (e.key == "level") {
        cfg.level = detail::parse_double(e.value, where);
      } else {
        throw config_error("unknown [events] key '" + e.key + "'", where);
      }
    } else if (e.section == "checkers") {
      if (e.key == "run") {
        for (const std::string& item : detail::split_list(e.value)) {
          cfg.checkers.push_back(CheckerSelection::parse(item, where));
        }
      } else if (e.key == "series_n_max") {
        cfg.series_n_max = detail::parse_long(e.value, where);
      } else if (e.key == "ratio_n_grid") {
        cfg.ratio_n_grid = detail::parse_long_list(e.value, where);
      } else if (e.key == "ratio_k_max") {
        cfg.ratio_k_max = detail::parse_long(e.value, where);
      } else if (e.key == "remark_n_grid") {
        cfg.remark_n_grid = detail::parse_long_list(e.value, where);
      } else {
        throw config_error("unknown [checkers] key '" + e.key + "'", where);
      }
    } else if (e.section == "simulation") {
      cfg.has_simulation = true;
      if (e.key == "paths") {
        cfg.sim_paths = detail::parse_long(e.value, where);
      } else if (e.key == "n_max") {
        cfg.sim_n_max = detail::parse_long(e.value, where);
      } else if (e.key == "seed") {
        try {
          std::size_t used = 0;
          cfg.seed = std::stoull(e.value, &used);
          if (used != e.value.size()) throw std::invalid_argument(e.value);
        } catch (const std::exception&) {
          throw config_error("bad seed '" + e.value + "'", where);
        }
      } else if (e.key == "record_grid") {
        cfg.record_grid = detail::parse_long_list(e.value, where);
      } else {
        throw config_error("unknown [simulation] key '" + e.key + "'", where);
      }
    } else if (e.section == "output") {
      if (e.key == "dir") {
        cfg.out_dir = e.value;
      } else if (e.key == "format") {
        if (e.value == "json") cfg.format = OutputFormat::json;
        else if (e.value == "csv") cfg.format = OutputFormat::csv;
        else if (e.value == "both") cfg.format = OutputFormat::both;
        else throw config_error("unknown format '" + e.value + "'", where);
      } else {
        throw config_error("unknown [output] key '" + e.key + "'", where);
      }
    } else {
      throw config_error("unknown section [" + e.section + "]",
                         origin + ":" + std::to_string(e.line_no));
    }
  }
  if (!saw_events) {
    throw config_error("missing [events] section", origin);
  }
  if (saw_explicit && saw_transform) {
    throw config_error("[events] must give either thresholds or a transform, not both",
                       origin);
  }
  cfg.validate(origin);
  return cfg;
}

inline ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open scenario file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Builtin scenarios.

struct BuiltinInfo {
  std::string name;
  std::string description;
  std::string transform;
};

/// Stable-ordered catalog.
inline std::vector<BuiltinInfo> list_builtins() {
  return {
      {"example3_1",
       "unit-uniform maxima under the power map m^(n/ln n), level 0.9; "
       "all checkers plus a trajectory simulation",
       "power"},
      {"example3_2",
       "heavy-tailed maxima (cdf 1 - 1/x) scaled by a_n = ln(n)/n, level 2; "
       "the plain probability series diverges while the ratio test decides",
       "scale ln(n)/n"},
  };
}

inline ScenarioConfig builtin_scenario(const std::string& name) {
  if (name == "example3_1") {
    ScenarioConfig cfg;
    cfg.name = "example3_1";
    cfg.distribution = Distribution::uniform01();
    cfg.n_min = 3;
    cfg.event_kind = EventSpecKind::transform;
    cfg.transform = TransformKind::power;
    cfg.level = 0.9;
    for (const char* c : {"bc1", "barndorff", "bs:1", "stepanov:1", "ratio", "remark"}) {
      cfg.checkers.push_back(CheckerSelection::parse(c, "builtin"));
    }
    cfg.series_n_max = 1000000;
    cfg.ratio_n_grid = {100, 1000, 10000};
    cfg.ratio_k_max = 8;
    cfg.remark_n_grid = {1000, 10000, 100000};
    cfg.has_simulation = true;
    cfg.sim_paths = 1000;
    cfg.sim_n_max = 100000;
    cfg.seed = 20260810;
    cfg.record_grid = {10, 100, 1000, 10000, 100000};
    return cfg;
  }
  if (name == "example3_2") {
    ScenarioConfig cfg;
    cfg.name = "example3_2";
    cfg.distribution = Distribution::pareto1();
    cfg.n_min = 3;
    cfg.event_kind = EventSpecKind::transform;
    cfg.transform = TransformKind::scale;
    cfg.scale_expr = Expression::parse("ln(n)/n");
    cfg.level = 2.0;
    for (const char* c : {"bc1", "barndorff", "bs:1", "stepanov:1", "ratio", "remark"}) {
      cfg.checkers.push_back(CheckerSelection::parse(c, "builtin"));
    }
    cfg.series_n_max = 1000000;
    cfg.ratio_n_grid = {100, 1000, 10000};
    cfg.ratio_k_max = 8;
    cfg.remark_n_grid = {1000, 10000, 100000};
    cfg.has_simulation = true;
    cfg.sim_paths = 1000;
    cfg.sim_n_max = 10000;
    cfg.seed = 20260810;
    cfg.record_grid = {10, 100, 1000, 10000};
    return cfg;
  }
  throw config_error("unknown builtin '" + name + "' (see `list`)", "builtin");
}

}  // namespace bcmax

#endif  // BCMAX_SCENARIO_HPP
