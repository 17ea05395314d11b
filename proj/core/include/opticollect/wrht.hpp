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

#ifndef OPTICOLLECT_WRHT_HPP
#define OPTICOLLECT_WRHT_HPP

#include <span>
#include <vector>

#include "opticollect/schedule.hpp"

namespace opticollect {

// Contiguous run of active nodes collected by one representative.
struct Group {
  std::vector<NodeId> members;
  NodeId representative = 0;
};

struct WrhtPlan {
  // One partition per group-collect level, in reduce order.
  std::vector<std::vector<Group>> levels;
  // Active node count entering each reduce level (N first); when the
  // terminal all-to-all fires, the last entry is its participant count m*.
  std::vector<int> active_counts;
  bool terminal_all2all = false;
  int group_size = 0;  // m
  int step_count = 0;  // theta

  int reduce_levels() const noexcept {
    return static_cast<int>(levels.size()) + (terminal_all2all ? 1 : 0);
  }
};

struct WrhtBuild {
  Schedule schedule;
  WrhtPlan plan;
};

// Largest group one representative can collect with w wavelengths: 2w+1.
int choose_group_size(int n_wavelengths);

// Cuts `active` (ring order) into ceil(|active|/m) consecutive groups; the
// representative of a k-member group is member floor((k-1)/2).
std::vector<Group> partition_level(std::span<const NodeId> active,
                                   int group_size);

// r >= 2 representatives can finish with one all-to-all step when
// ceil(r^2/8) <= w.
bool all2all_feasible(int representatives, int n_wavelengths);

// Members behind the representative send clockwise, members ahead send
// counterclockwise. Broadcast transfers are the same arcs reversed.
std::vector<Transfer> collect_transfers(const Group& group, double payload_bits);
std::vector<Transfer> disseminate_transfers(const Group& group,
                                            double payload_bits);

// Every representative sends to every other one along the shorter arc of
// the representatives' cyclic order. Antipodal pairs (even r) are split so
// that the clockwise set is closed under a half-turn, which keeps every
// link at ceil(r^2/8) arcs or fewer.
std::vector<Transfer> all_to_all_transfers(std::span<const NodeId> reps,
                                           double payload_bits);

// Reduce levels, optional terminal all-to-all, mirrored broadcast levels.
// Every transfer carries the full payload d.
WrhtBuild build_wrht(int n_nodes, int n_wavelengths, bool allow_all2all = true,
                     double payload_bits = 1.0);

// Closed form: m = 2w+1, L = ceil(log_m N); 2L-1 if the all-to-all among
// m* = ceil(N / m^(L-1)) representatives fits, else 2L.
int wrht_step_count(int n_nodes, int n_wavelengths, bool allow_all2all = true);

// Smallest L with base^L >= n, by repeated multiplication (n >= 1, base >= 2).
int ceil_log(long long base, long long n);

}  // namespace opticollect

#endif  // OPTICOLLECT_WRHT_HPP
