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

// opticollect: step tables, schedule dumps, verification, timing and sweeps
// for all-reduce on an optical WDM ring.
//
// Exit codes: 0 success, 2 configuration error, 3 wavelengths exhausted,
// 4 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "opticollect/analysis.hpp"
#include "opticollect/error.hpp"
#include "opticollect/experiment.hpp"
#include "opticollect/rwa.hpp"

namespace {

using namespace opticollect;

constexpr int kExitConfig = 2;
constexpr int kExitRwa = 3;
constexpr int kExitVerify = 4;

struct Flags {
  std::vector<std::string> algorithms;
  std::vector<int> n_nodes;
  std::optional<int> w;
  std::optional<int> g;
  std::optional<std::string> model;
  std::optional<std::string> params;
  std::optional<bool> allow_all2all;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--alg", f.algorithms,
                  "wrht | ring | hring | bt | rd | ering (repeatable)");
  cmd->add_option("--N", f.n_nodes, "node count (repeatable)");
  cmd->add_option("--w", f.w, "wavelengths per fiber");
  cmd->add_option("--g", f.g, "H-Ring intra-group node count");
  cmd->add_option("--model", f.model,
                  "workload preset: AlexNet | VGG16 | ResNet50 | GoogLeNet");
  cmd->add_option("--params", f.params, "JSON configuration file");
  cmd->add_flag("--allow-all2all,!--no-all2all", f.allow_all2all,
                "let WRHT finish with an all-to-all step (default on)");
  cmd->add_option("--out", f.out, "write output to this path instead of stdout");
}

ExperimentConfig load_config(const Flags& f) {
  ExperimentConfig cfg;
  if (f.params) {
    std::ifstream in(*f.params);
    if (!in) throw ConfigError("cannot read params file '" + *f.params + "'");
    std::ostringstream text;
    text << in.rdbuf();
    cfg = parse_config(text.str());
  }
  if (!f.algorithms.empty()) {
    cfg.variants.clear();
    for (const auto& a : f.algorithms) {
      auto v = parse_variant(a);
      if (!v) throw ConfigError("unknown algorithm '" + a + "'");
      cfg.variants.push_back(*v);
    }
  }
  if (!f.n_nodes.empty()) cfg.n_nodes = f.n_nodes;
  if (f.w) cfg.n_wavelengths = *f.w;
  if (f.g) cfg.group = *f.g;
  if (f.model) {
    cfg.workload = *f.model;
    cfg.param_count.reset();
  }
  if (f.allow_all2all) cfg.allow_all2all = *f.allow_all2all;
  cfg.validate();
  return cfg;
}

void require_nodes(const ExperimentConfig& cfg) {
  if (cfg.n_nodes.empty()) throw ConfigError("at least one --N is required");
}

void default_variants(ExperimentConfig& cfg, std::vector<std::string> tokens) {
  if (!cfg.variants.empty()) return;
  for (const auto& t : tokens) cfg.variants.push_back(*parse_variant(t));
}

void emit(const Flags& f, const std::string& text) {
  if (!f.out) {
    std::cout << text;
    return;
  }
  std::ofstream out(*f.out, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + *f.out + "'");
  out << text;
}

int run_schedule(const Flags& f) {
  ExperimentConfig cfg = load_config(f);
  require_nodes(cfg);
  default_variants(cfg, {"wrht"});
  if (cfg.variants.size() != 1 || cfg.n_nodes.size() != 1)
    throw ConfigError("schedule takes exactly one --alg and one --N");
  emit(f, schedule_to_json(build_variant(cfg.variants[0], cfg.n_nodes[0], cfg)));
  return 0;
}

int run_verify(const Flags& f) {
  ExperimentConfig cfg = load_config(f);
  require_nodes(cfg);
  default_variants(cfg, {"wrht"});
  std::ostringstream os;
  bool all_pass = true;
  for (const Variant& v : cfg.variants) {
    for (int n : cfg.n_nodes) {
      const Verdict verdict = verify_allreduce(build_variant(v, n, cfg));
      all_pass = all_pass && verdict.pass;
      os << variant_name(v) << " N=" << n << ": "
         << (verdict.pass ? "PASS" : "FAIL (" + verdict.message + ")") << "\n";
    }
  }
  emit(f, os.str());
  return all_pass ? 0 : kExitVerify;
}

int run_time(const Flags& f) {
  ExperimentConfig cfg = load_config(f);
  require_nodes(cfg);
  default_variants(cfg, {"wrht"});
  std::ostringstream os;
  for (const Variant& v : cfg.variants) {
    for (int n : cfg.n_nodes) {
      const Schedule s = build_variant(v, n, cfg);
      const Verdict verdict = verify_allreduce(s);
      if (!verdict)
        throw VerificationFailure(variant_name(v) + " N=" + std::to_string(n) +
                                  ": " + verdict.message);
      const TimingReport r = time_variant(v, s, cfg);
      os << variant_name(v) << " N=" << n << " steps=" << r.steps
         << " analytic=" << variant_analytic_steps(v, n, cfg)
         << " total_time_s=" << format_seconds(r.total_time);
      if (v.fabric == Fabric::kOptical)
        os << " lower_bound_steps=" << r.lower_bound_steps
           << " lower_bound_time_s=" << format_seconds(r.lower_bound_time);
      os << "\n";
    }
  }
  emit(f, os.str());
  return 0;
}

int run_sweep_cmd(const Flags& f) {
  ExperimentConfig cfg = load_config(f);
  require_nodes(cfg);
  default_variants(cfg, {"wrht", "ring", "hring", "bt"});
  emit(f, format_sweep_csv(run_sweep(cfg)));
  return 0;
}

int run_steps(const Flags& f) {
  ExperimentConfig cfg = load_config(f);
  require_nodes(cfg);
  emit(f, steps_table(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-reduce schedules and cost models for optical WDM rings"};
  app.require_subcommand(1);

  Flags flags;
  int (*handler)(const Flags&) = nullptr;
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Flags&);
  };
  const Sub subs[] = {
      {"steps", "analytic communication-step table", run_steps},
      {"schedule", "dump one wavelength-assigned schedule as JSON", run_schedule},
      {"verify", "symbolically verify generated schedules", run_verify},
      {"time", "communication time per algorithm and N", run_time},
      {"sweep", "verified timing sweep as CSV", run_sweep_cmd},
      {"table1", "step comparison at N=1000, w=64, g=5",
       [](const Flags& f) {
         emit(f, table1_report());
         return 0;
       }},
      {"fig2", "15-node, 2-wavelength BT vs WRHT example",
       [](const Flags& f) {
         emit(f, fig2_report());
         return 0;
       }},
  };
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, flags);
    cmd->callback([&handler, fn = s.fn] { handler = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return handler(flags);
  } catch (const WavelengthExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRwa;
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
