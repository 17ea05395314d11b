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

#ifndef OPTICOLLECT_ANALYSIS_HPP
#define OPTICOLLECT_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "opticollect/ring_model.hpp"
#include "opticollect/schedule.hpp"

namespace opticollect {

// Per-step optical cost: every step pays the reconfiguration overhead a and
// moves its payload at B bits/s per wavelength.
class CostModel {
 public:
  CostModel(double bandwidth_per_wavelength, double step_overhead,
            double payload_bits);

  // B and a from the topology, d from the workload.
  static CostModel from(const RingTopology& topology, const Workload& workload);

  double bandwidth_per_wavelength() const noexcept { return bandwidth_; }
  double step_overhead() const noexcept { return overhead_; }
  double payload_bits() const noexcept { return payload_; }

 private:
  double bandwidth_;
  double overhead_;
  double payload_;
};

// d*theta/B + a*theta.
double comm_time(int steps, const CostModel& model);

struct TimingReport {
  AlgorithmId algorithm = AlgorithmId::kWrht;
  int n_nodes = 0;
  int n_wavelengths = 0;  // 0 when not applicable
  int steps = 0;
  double total_time = 0.0;
  std::vector<double> per_step_times;
  int lower_bound_steps = 0;  // 0 when n_wavelengths is 0
  double lower_bound_time = 0.0;
  // electrical_time only: the schedule carried optical wavelengths.
  bool wavelengths_ignored = false;
};

// Each step costs (largest payload in the step)/B + a. Payloads are rescaled
// by model.payload_bits() / schedule.payload_unit_bits, so a schedule built
// for a unit payload can be timed for any workload. Every transfer must have
// a wavelength (IncompleteAssignment otherwise). Pass n_wavelengths > 0 to
// fill the lower-bound fields.
TimingReport simulate_time(const Schedule& schedule, const CostModel& model,
                           int n_wavelengths = 0);

// 2 ceil(log_{2w+1} N), integer arithmetic only.
int lower_bound_steps(int n_nodes, int n_wavelengths);

// 2 d ceil(log_m N)/B + 2 a ceil(log_m N), m = 2w+1.
double lower_bound_time(int n_nodes, int n_wavelengths, const CostModel& model);

// Fat-tree cost: each step pays (2 * levels) router delays plus its largest
// payload over one link. Only Ring and RD schedules are accepted; their
// payloads are used as stored.
TimingReport electrical_time(const Schedule& schedule,
                             const FatTreeParams& params);

struct Verdict {
  bool pass = false;
  std::optional<NodeId> node;         // first node missing a contributor
  std::optional<NodeId> missing;      // lowest missing contributor
  std::optional<int> chunk;           // chunk lane where it is missing
  std::string message;

  explicit operator bool() const noexcept { return pass; }
};

// Symbolic all-reduce check. Node i starts with contributor set {i} on every
// chunk lane; a transfer unions the sender's pre-step set into the
// receiver's for each lane it covers. PASS iff every node ends with
// {0..N-1} on every lane. Throws DomainError for out-of-range nodes.
Verdict verify_allreduce(const Schedule& schedule);

}  // namespace opticollect

#endif  // OPTICOLLECT_ANALYSIS_HPP
