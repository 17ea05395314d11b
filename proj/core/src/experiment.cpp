// Copyright 2026 The OptiCollect Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "opticollect/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "opticollect/baselines.hpp"
#include "opticollect/rwa.hpp"
#include "opticollect/wrht.hpp"

namespace opticollect {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_')
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

std::optional<Variant> parse_variant(std::string_view token) {
  const std::string key = lower(token);
  if (key == "wrht") return Variant{AlgorithmId::kWrht, Fabric::kOptical};
  if (key == "ring" || key == "oring")
    return Variant{AlgorithmId::kRing, Fabric::kOptical};
  if (key == "hring") return Variant{AlgorithmId::kHRing, Fabric::kOptical};
  if (key == "bt") return Variant{AlgorithmId::kBT, Fabric::kOptical};
  if (key == "rd") return Variant{AlgorithmId::kRD, Fabric::kElectrical};
  if (key == "ering") return Variant{AlgorithmId::kRing, Fabric::kElectrical};
  return std::nullopt;
}

std::string variant_name(const Variant& v) {
  switch (v.algorithm) {
    case AlgorithmId::kWrht:
      return "WRHT";
    case AlgorithmId::kRing:
      return v.fabric == Fabric::kOptical ? "O-Ring" : "E-Ring";
    case AlgorithmId::kHRing:
      return "H-Ring";
    case AlgorithmId::kBT:
      return "BT";
    case AlgorithmId::kRD:
      return "RD";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  for (int n : n_nodes)
    if (n < 2) throw ConfigError("N must be >= 2 (got " + std::to_string(n) + ")");
  if (n_wavelengths < 1) throw ConfigError("w must be >= 1");
  if (group && *group < 2) throw ConfigError("g must be >= 2");
  if (bytes_per_param < 1) throw ConfigError("bytes_per_param must be >= 1");
  if (param_count && *param_count < 1) throw ConfigError("param_count must be >= 1");
  if (!param_count && !find_workload(workload))
    throw ConfigError("unknown workload '" + workload + "'");
  if (!(bandwidth_per_wavelength > 0.0))
    throw ConfigError("bandwidth_per_wavelength must be > 0");
  if (!(reconfig_delay >= 0.0)) throw ConfigError("reconfig_delay must be >= 0");
  if (fibers_per_direction < 1 || fibers_per_direction > 255)
    throw ConfigError("fibers_per_direction must be in [1, 255]");
  try {
    fat_tree.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  for (const Variant& v : variants) {
    if (v.fabric == Fabric::kOptical && v.algorithm == AlgorithmId::kRD)
      throw ConfigError("RD is only modelled on the electrical fat-tree");
  }
}

Workload ExperimentConfig::resolved_workload() const {
  Workload w;
  if (param_count) {
    w.name = "custom";
    w.param_count = *param_count;
  } else {
    auto preset = find_workload(workload);
    if (!preset) throw ConfigError("unknown workload '" + workload + "'");
    w = *preset;
  }
  w.bytes_per_param = bytes_per_param;
  return w;
}

RingTopology ExperimentConfig::topology(int n) const {
  return RingTopology(n, n_wavelengths, fibers_per_direction,
                      bandwidth_per_wavelength, reconfig_delay);
}

CostModel ExperimentConfig::cost_model() const {
  return CostModel(bandwidth_per_wavelength, reconfig_delay,
                   payload_bits(resolved_workload()));
}

namespace {

template <typename T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

int get_int(const nlohmann::json& j, const char* key) {
  if (!j.is_number_integer())
    throw ConfigError(std::string("config field '") + key + "' must be an integer");
  return j.get<int>();
}

double get_number(const nlohmann::json& j, const char* key) {
  if (!j.is_number())
    throw ConfigError(std::string("config field '") + key + "' must be a number");
  return j.get<double>();
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "algorithms") {
      if (!value.is_array()) throw ConfigError("'algorithms' must be an array");
      for (const auto& a : value) {
        auto v = parse_variant(get_as<std::string>(a, "algorithms"));
        if (!v) throw ConfigError("unknown algorithm '" + a.dump() + "'");
        cfg.variants.push_back(*v);
      }
    } else if (key == "N") {
      if (value.is_array()) {
        for (const auto& n : value) cfg.n_nodes.push_back(get_int(n, "N"));
      } else {
        cfg.n_nodes.push_back(get_int(value, "N"));
      }
    } else if (key == "w") {
      cfg.n_wavelengths = get_int(value, "w");
    } else if (key == "g") {
      if (!value.is_null()) cfg.group = get_int(value, "g");
    } else if (key == "workload") {
      cfg.workload = get_as<std::string>(value, "workload");
    } else if (key == "param_count") {
      if (!value.is_number_integer())
        throw ConfigError("config field 'param_count' must be an integer");
      cfg.param_count = value.get<std::int64_t>();
    } else if (key == "bytes_per_param") {
      cfg.bytes_per_param = get_int(value, "bytes_per_param");
    } else if (key == "bandwidth_per_wavelength") {
      cfg.bandwidth_per_wavelength = get_number(value, "bandwidth_per_wavelength");
    } else if (key == "reconfig_delay") {
      cfg.reconfig_delay = get_number(value, "reconfig_delay");
    } else if (key == "fibers_per_direction") {
      cfg.fibers_per_direction = get_int(value, "fibers_per_direction");
    } else if (key == "allow_all2all") {
      if (!value.is_boolean()) throw ConfigError("'allow_all2all' must be a boolean");
      cfg.allow_all2all = value.get<bool>();
    } else if (key == "fat_tree") {
      if (!value.is_object()) throw ConfigError("'fat_tree' must be an object");
      for (const auto& [fk, fv] : value.items()) {
        if (fk == "router_ports") cfg.fat_tree.router_ports = get_int(fv, "router_ports");
        else if (fk == "levels") cfg.fat_tree.levels = get_int(fv, "levels");
        else if (fk == "link_bandwidth") cfg.fat_tree.link_bandwidth = get_number(fv, "link_bandwidth");
        else if (fk == "router_delay") cfg.fat_tree.router_delay = get_number(fv, "router_delay");
        else if (fk == "packet_size") cfg.fat_tree.packet_size = get_int(fv, "packet_size");
        else throw ConfigError("unknown fat_tree field '" + fk + "'");
      }
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::optional<int> resolve_group(const ExperimentConfig& config, int n) {
  if (config.group) return config.group;
  std::optional<int> best;
  long long best_steps = 0;
  for (int g = 2; g <= n / 2; ++g) {
    if (n % g != 0) continue;
    const long long s =
        analytic_steps(AlgorithmId::kHRing, n, config.n_wavelengths, g).steps;
    if (!best || s < best_steps) {
      best = g;
      best_steps = s;
    }
  }
  return best;
}

namespace {

int require_group(const ExperimentConfig& config, int n) {
  auto g = resolve_group(config, n);
  if (!g)
    throw DomainError("no H-Ring group size divides N=" + std::to_string(n) +
                      " with at least two groups");
  return *g;
}

}  // namespace

Schedule build_variant(const Variant& v, int n, const ExperimentConfig& config) {
  const double d = payload_bits(config.resolved_workload());
  if (v.fabric == Fabric::kElectrical) {
    if (v.algorithm == AlgorithmId::kRing) return build_ring(n, d);
    if (v.algorithm == AlgorithmId::kRD) return build_rd(n, d);
    throw ConfigError(variant_name(v) + " has no electrical model");
  }

  Schedule s;
  switch (v.algorithm) {
    case AlgorithmId::kWrht:
      s = build_wrht(n, config.n_wavelengths, config.allow_all2all, d).schedule;
      break;
    case AlgorithmId::kRing:
      s = build_ring(n, d);
      break;
    case AlgorithmId::kHRing:
      s = build_hring(n, require_group(config, n), config.n_wavelengths, d);
      break;
    case AlgorithmId::kBT:
      s = build_bt(n, d);
      break;
    case AlgorithmId::kRD:
      throw ConfigError("RD is only modelled on the electrical fat-tree");
  }
  const RingTopology topo = config.topology(n);
  s = assign_schedule(std::move(s), topo);
  for (const Step& step : s.steps) {
    const auto conflicts = conflict_check(step, topo);
    if (!conflicts.empty())
      throw VerificationFailure(variant_name(v) + " N=" + std::to_string(n) +
                                ": wavelength conflict in step " +
                                std::to_string(step.index) + " on " +
                                to_string(conflicts.front().segment));
  }
  return s;
}

long long variant_analytic_steps(const Variant& v, int n,
                                 const ExperimentConfig& config) {
  const int g = v.algorithm == AlgorithmId::kHRing ? require_group(config, n) : 0;
  return analytic_steps(v.algorithm, n, config.n_wavelengths, g,
                        config.allow_all2all)
      .steps;
}

TimingReport time_variant(const Variant& v, const Schedule& schedule,
                          const ExperimentConfig& config) {
  if (v.fabric == Fabric::kElectrical)
    return electrical_time(schedule, config.fat_tree);
  return simulate_time(schedule, config.cost_model(), config.n_wavelengths);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const double d = payload_bits(config.resolved_workload());
  std::vector<SweepRow> rows;
  for (const Variant& v : config.variants) {
    for (int n : config.n_nodes) {
      const Schedule s = build_variant(v, n, config);
      const Verdict verdict = verify_allreduce(s);
      if (!verdict)
        throw VerificationFailure(variant_name(v) + " N=" + std::to_string(n) +
                                  ": " + verdict.message);
      const TimingReport report = time_variant(v, s, config);
      SweepRow row;
      row.algorithm = variant_name(v);
      row.n = n;
      if (v.fabric == Fabric::kOptical) row.w = config.n_wavelengths;
      if (v.algorithm == AlgorithmId::kHRing) row.g = require_group(config, n);
      if (v.algorithm == AlgorithmId::kWrht)
        row.m = choose_group_size(config.n_wavelengths);
      row.steps = s.step_count();
      row.analytic_steps = variant_analytic_steps(v, n, config);
      row.total_time_s = report.total_time;
      row.payload_bits = d;
      row.verified = true;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string format_seconds(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", seconds);
  return buf;
}

namespace {

std::string format_bits(double bits) {
  char buf[64];
  if (bits == std::floor(bits) && bits < 1e18)
    std::snprintf(buf, sizeof buf, "%.0f", bits);
  else
    std::snprintf(buf, sizeof buf, "%.9g", bits);
  return buf;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    out += r.algorithm + ',' + std::to_string(r.n) + ',' + opt(r.w) + ',' +
           opt(r.g) + ',' + opt(r.m) + ',' + std::to_string(r.steps) + ',' +
           std::to_string(r.analytic_steps) + ',' + format_seconds(r.total_time_s) +
           ',' + format_bits(r.payload_bits) + ',' + (r.verified ? "true" : "false") +
           '\n';
  }
  return out;
}

std::string steps_table(const ExperimentConfig& config) {
  std::vector<Variant> variants = config.variants;
  if (variants.empty())
    variants = {{AlgorithmId::kRing, Fabric::kOptical},
                {AlgorithmId::kHRing, Fabric::kOptical},
                {AlgorithmId::kBT, Fabric::kOptical},
                {AlgorithmId::kRD, Fabric::kElectrical},
                {AlgorithmId::kWrht, Fabric::kOptical}};
  const int w = config.n_wavelengths;

  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %8s %4s %6s %10s  %s\n", "algorithm",
                "N", "w", "g", "steps", "note");
  os << line;
  for (const Variant& v : variants) {
    for (int n : config.n_nodes) {
      std::string g_col = "-";
      std::string steps;
      std::string note;
      switch (v.algorithm) {
        case AlgorithmId::kWrht: {
          const int m = choose_group_size(w);
          const int levels = ceil_log(m, n);
          long long span = 1;
          for (int i = 0; i + 1 < levels; ++i) span *= m;
          const int last = static_cast<int>((n + span - 1) / span);
          const bool fits = all2all_feasible(last, w);
          const int selected = wrht_step_count(n, w, config.allow_all2all);
          steps = std::to_string(2 * levels) + "/" + std::to_string(2 * levels - 1);
          note = "m=" + std::to_string(m) + ", L=" + std::to_string(levels) +
                 ", m*=" + std::to_string(last) + ", all-to-all " +
                 (fits ? "fits" : "does not fit") + "; selected " +
                 std::to_string(selected) +
                 (config.allow_all2all ? "" : " (all-to-all disabled)");
          break;
        }
        case AlgorithmId::kHRing: {
          auto g = resolve_group(config, n);
          if (!g) {
            steps = "n/a";
            note = "no group size with at least two groups";
            break;
          }
          g_col = std::to_string(*g);
          if (*g > n) {
            steps = "n/a";
            note = "g exceeds N";
            break;
          }
          const auto a = analytic_steps(AlgorithmId::kHRing, n, w, *g);
          steps = std::to_string(a.steps);
          note = std::string("formula") + (a.exact ? "" : " (non-integer, rounded up)");
          if (n % *g == 0 && n / *g >= 2)
            note += "; constructed " + std::to_string(hring_constructed_steps(n, *g, w));
          else
            note += "; constructed n/a (g must divide N)";
          break;
        }
        default:
          steps = std::to_string(analytic_steps(v.algorithm, n, w).steps);
          break;
      }
      std::snprintf(line, sizeof line, "%-10s %8d %4s %6s %10s  %s\n",
                    variant_name(v).c_str(), n,
                    v.fabric == Fabric::kOptical ? std::to_string(w).c_str() : "-",
                    g_col.c_str(), steps.c_str(), note.c_str());
      os << line;
    }
  }
  return os.str();
}

std::string schedule_to_json(const Schedule& schedule) {
  ordered_json doc;
  doc["algorithm"] = std::string(to_string(schedule.algorithm));
  doc["n_nodes"] = schedule.n_nodes;
  doc["payload_unit_bits"] = schedule.payload_unit_bits;
  ordered_json steps = ordered_json::array();
  for (const Step& step : schedule.steps) {
    ordered_json js;
    js["index"] = step.index;
    js["stage"] = std::string(to_string(step.stage));
    js["wavelengths_used"] = wavelengths_used(step);
    ordered_json transfers = ordered_json::array();
    for (const Transfer& t : step.transfers) {
      ordered_json jt;
      jt["src"] = t.src;
      jt["dst"] = t.dst;
      jt["direction"] = std::string(to_string(t.direction));
      jt["fiber"] = t.fiber;
      if (t.wavelength)
        jt["wavelength"] = *t.wavelength;
      else
        jt["wavelength"] = nullptr;
      jt["payload_bits"] = t.payload_bits;
      transfers.push_back(std::move(jt));
    }
    js["transfers"] = std::move(transfers);
    steps.push_back(std::move(js));
  }
  doc["steps"] = std::move(steps);
  return doc.dump(2) + "\n";
}

std::string table1_report() {
  constexpr int kN = 1000;
  constexpr int kW = 64;
  constexpr int kG = 5;
  struct Row {
    const char* name;
    long long computed;
    long long published;
    std::string detail;
  };
  const auto hring = analytic_steps(AlgorithmId::kHRing, kN, kW, kG);
  const Row rows[] = {
      {"Ring", analytic_steps(AlgorithmId::kRing, kN, kW).steps, 1998, "2(N-1)"},
      {"H-Ring", hring.steps, 411,
       "2(g^2+N)/g + ceil(g/w) - 4 with g=5; constructed schedule takes " +
           std::to_string(hring_constructed_steps(kN, kG, kW))},
      {"BT", analytic_steps(AlgorithmId::kBT, kN, kW).steps, 20, "2 ceil(log2 N)"},
      {"WRHT", wrht_step_count(kN, kW, false), 4,
       "2 ceil(log_m N), m=129; with the terminal all-to-all: " +
           std::to_string(wrht_step_count(kN, kW, true))},
  };
  std::ostringstream os;
  os << "Communication steps, N=" << kN << ", w=" << kW << "\n";
  char line[512];
  std::snprintf(line, sizeof line, "%-8s %10s %10s  %-8s %s\n", "algorithm",
                "computed", "published", "status", "detail");
  os << line;
  for (const Row& r : rows) {
    std::snprintf(line, sizeof line, "%-8s %10lld %10lld  %-8s %s\n", r.name,
                  r.computed, r.published,
                  r.computed == r.published ? "match" : "MISMATCH",
                  r.detail.c_str());
    os << line;
  }
  os << "note: the published H-Ring value 411 is not reproduced; the printed "
        "closed form evaluates to "
     << hring.steps << ".\n";
  return os.str();
}

std::string fig2_report() {
  constexpr int kN = 15;
  constexpr int kW = 2;
  const RingTopology topo(kN, kW);
  std::ostringstream os;
  auto describe = [&](const char* title, const Schedule& raw) {
    const Schedule s = assign_schedule(raw, topo);
    os << title << ": " << s.step_count() << " steps\n";
    for (const Step& step : s.steps) {
      os << "  step " << step.index + 1 << " [" << to_string(step.stage) << "] "
         << wavelengths_used(step) << " wavelength(s):";
      for (const Transfer& t : step.transfers)
        os << ' ' << t.src << "->" << t.dst << '/' << to_string(t.direction)
           << "/l" << *t.wavelength;
      os << "\n";
      if (!conflict_check(step, topo).empty()) os << "  CONFLICT in step\n";
    }
    os << "  verify: " << verify_allreduce(s).message << "\n";
  };
  describe("BT", build_bt(kN));
  describe("WRHT", build_wrht(kN, kW, true).schedule);
  return os.str();
}

}  // namespace opticollect
