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

#ifndef OPTICOLLECT_EXPERIMENT_HPP
#define OPTICOLLECT_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opticollect/analysis.hpp"
#include "opticollect/error.hpp"
#include "opticollect/ring_model.hpp"
#include "opticollect/schedule.hpp"

namespace opticollect {

// A schedule generator placed on a fabric. Ring runs on both: "ring" is the
// optical ring (O-Ring), "ering" the fat-tree (E-Ring). RD is electrical only.
enum class Fabric : std::uint8_t { kOptical, kElectrical };

struct Variant {
  AlgorithmId algorithm = AlgorithmId::kWrht;
  Fabric fabric = Fabric::kOptical;

  friend bool operator==(const Variant&, const Variant&) = default;
};

// Accepts wrht, ring | oring | o-ring, hring | h-ring, bt, rd, ering | e-ring.
std::optional<Variant> parse_variant(std::string_view token);
std::string variant_name(const Variant& v);

// A generated schedule failed verify_allreduce (CLI exit code 4).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::vector<Variant> variants;
  std::vector<int> n_nodes;
  int n_wavelengths = 64;
  std::optional<int> group;  // H-Ring g; unset = best divisor of N
  std::string workload = "ResNet50";
  std::optional<std::int64_t> param_count;  // overrides the preset size
  int bytes_per_param = 4;
  double bandwidth_per_wavelength = 40e9;
  double reconfig_delay = 25e-6;
  int fibers_per_direction = 2;
  FatTreeParams fat_tree;
  bool allow_all2all = true;

  // Throws ConfigError when a field is outside its module's invariants.
  void validate() const;
  Workload resolved_workload() const;
  RingTopology topology(int n) const;
  CostModel cost_model() const;
};

// JSON document; every key optional. Unknown keys and workload names are
// rejected with ConfigError. Keys: algorithms, N, w, g, workload,
// param_count, bytes_per_param, bandwidth_per_wavelength, reconfig_delay,
// fibers_per_direction, allow_all2all, fat_tree{router_ports, levels,
// link_bandwidth, router_delay, packet_size}.
ExperimentConfig parse_config(std::string_view json_text);

// H-Ring group size for N: the configured g, or the divisor of N (with at
// least two groups) minimising the closed-form step count. nullopt when no
// such divisor exists.
std::optional<int> resolve_group(const ExperimentConfig& config, int n);

// Builds the variant's schedule with payload d. Optical schedules come back
// wavelength-assigned and conflict-checked (WavelengthExhausted propagates).
Schedule build_variant(const Variant& v, int n, const ExperimentConfig& config);

// Analytic step count matching build_variant.
long long variant_analytic_steps(const Variant& v, int n,
                                 const ExperimentConfig& config);

TimingReport time_variant(const Variant& v, const Schedule& schedule,
                          const ExperimentConfig& config);

struct SweepRow {
  std::string algorithm;
  int n = 0;
  std::optional<int> w;
  std::optional<int> g;
  std::optional<int> m;
  int steps = 0;
  long long analytic_steps = 0;
  double total_time_s = 0.0;
  double payload_bits = 0.0;
  bool verified = false;
};

// One row per (variant, N) in that order. Every schedule is verified before
// it is timed; a failure throws VerificationFailure.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

inline constexpr std::string_view kSweepHeader =
    "algorithm,N,w,g,m,steps,analytic_steps,total_time_s,payload_bits,verified";

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

// Analytic step table for every variant and N. WRHT shows 2L/2L-1 and
// whether the terminal all-to-all fits; H-Ring shows formula and construction.
std::string steps_table(const ExperimentConfig& config);

// Stable-order JSON: algorithm, n_nodes, payload_unit_bits, steps[index,
// stage, wavelengths_used, transfers[src, dst, direction, fiber, wavelength,
// payload_bits]].
std::string schedule_to_json(const Schedule& schedule);

// Communication-step comparison at N=1000, w=64, g=5 against the reported
// values 1998 / 411 / 20 / 4.
std::string table1_report();

// The 15-node, 2-wavelength motivating example: BT and WRHT schedules with
// per-step wavelength use and verification verdicts.
std::string fig2_report();

std::string format_seconds(double seconds);

}  // namespace opticollect

#endif  // OPTICOLLECT_EXPERIMENT_HPP
