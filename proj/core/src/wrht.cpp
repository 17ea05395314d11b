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

#include "opticollect/wrht.hpp"

#include <limits>
#include <utility>

#include "opticollect/error.hpp"

namespace opticollect {

int ceil_log(long long base, long long n) {
  if (base < 2) throw DomainError("ceil_log: base must be >= 2");
  if (n < 1) throw DomainError("ceil_log: argument must be >= 1");
  int levels = 0;
  long long reach = 1;
  while (reach < n) {
    if (reach > std::numeric_limits<long long>::max() / base) return levels + 1;
    reach *= base;
    ++levels;
  }
  return levels;
}

int choose_group_size(int n_wavelengths) {
  if (n_wavelengths < 1) throw DomainError("need at least one wavelength");
  return 2 * n_wavelengths + 1;
}

std::vector<Group> partition_level(std::span<const NodeId> active,
                                   int group_size) {
  if (group_size < 2) throw DomainError("group size must be >= 2");
  if (active.empty()) throw DomainError("cannot partition an empty level");
  std::vector<Group> groups;
  groups.reserve((active.size() + group_size - 1) / group_size);
  for (std::size_t head = 0; head < active.size(); head += group_size) {
    const std::size_t k =
        std::min<std::size_t>(group_size, active.size() - head);
    Group g;
    g.members.assign(active.begin() + head, active.begin() + head + k);
    g.representative = g.members[(k - 1) / 2];
    groups.push_back(std::move(g));
  }
  return groups;
}

bool all2all_feasible(int representatives, int n_wavelengths) {
  if (representatives < 2) return false;
  const long long r = representatives;
  return (r * r + 7) / 8 <= n_wavelengths;
}

std::vector<Transfer> collect_transfers(const Group& group,
                                        double payload_bits) {
  std::vector<Transfer> out;
  bool behind = true;
  for (NodeId member : group.members) {
    if (member == group.representative) {
      behind = false;
      continue;
    }
    Transfer t;
    t.payload_bits = payload_bits;
    t.src = member;
    t.dst = group.representative;
    t.direction = behind ? Direction::kClockwise : Direction::kCounterClockwise;
    out.push_back(t);
  }
  return out;
}

std::vector<Transfer> disseminate_transfers(const Group& group,
                                            double payload_bits) {
  std::vector<Transfer> out = collect_transfers(group, payload_bits);
  for (Transfer& t : out) {
    std::swap(t.src, t.dst);
    t.direction = opposite(t.direction);
  }
  return out;
}

std::vector<Transfer> all_to_all_transfers(std::span<const NodeId> reps,
                                           double payload_bits) {
  const int r = static_cast<int>(reps.size());
  std::vector<Transfer> out;
  if (r < 2) return out;
  out.reserve(static_cast<std::size_t>(r) * (r - 1));
  const int half = r / 2;
  const int quarter = (r + 3) / 4;
  for (int s = 0; s < r; ++s) {
    for (int k = 1; k < r; ++k) {
      bool cw;
      if (2 * k < r)
        cw = true;
      else if (2 * k > r)
        cw = false;
      else
        cw = (s % half) < quarter;
      Transfer t;
      t.payload_bits = payload_bits;
      t.src = reps[s];
      t.dst = reps[(s + k) % r];
      t.direction = cw ? Direction::kClockwise : Direction::kCounterClockwise;
      out.push_back(t);
    }
  }
  return out;
}

WrhtBuild build_wrht(int n_nodes, int n_wavelengths, bool allow_all2all,
                     double payload_bits) {
  if (n_nodes < 2) throw DomainError("WRHT needs at least 2 nodes");
  if (!(payload_bits > 0.0)) throw DomainError("payload must be positive");
  const int m = choose_group_size(n_wavelengths);

  WrhtBuild out;
  WrhtPlan& plan = out.plan;
  plan.group_size = m;
  Schedule& sched = out.schedule;
  sched.algorithm = AlgorithmId::kWrht;
  sched.n_nodes = n_nodes;
  sched.payload_unit_bits = payload_bits;
  sched.n_chunks = 1;

  std::vector<NodeId> active(n_nodes);
  for (int i = 0; i < n_nodes; ++i) active[i] = i;

  while (active.size() > 1) {
    const int r = static_cast<int>(active.size());
    plan.active_counts.push_back(r);
    if (allow_all2all && all2all_feasible(r, n_wavelengths)) {
      Step step;
      step.stage = Stage::kAllToAll;
      step.transfers = all_to_all_transfers(active, payload_bits);
      sched.steps.push_back(std::move(step));
      plan.terminal_all2all = true;
      break;
    }
    std::vector<Group> groups = partition_level(active, m);
    Step step;
    step.stage = Stage::kReduce;
    std::vector<NodeId> reps;
    reps.reserve(groups.size());
    for (const Group& g : groups) {
      auto ts = collect_transfers(g, payload_bits);
      step.transfers.insert(step.transfers.end(), ts.begin(), ts.end());
      reps.push_back(g.representative);
    }
    sched.steps.push_back(std::move(step));
    plan.levels.push_back(std::move(groups));
    active = std::move(reps);
  }

  for (auto level = plan.levels.rbegin(); level != plan.levels.rend(); ++level) {
    Step step;
    step.stage = Stage::kBroadcast;
    for (const Group& g : *level) {
      auto ts = disseminate_transfers(g, payload_bits);
      step.transfers.insert(step.transfers.end(), ts.begin(), ts.end());
    }
    sched.steps.push_back(std::move(step));
  }

  sched.reindex();
  plan.step_count = sched.step_count();
  return out;
}

int wrht_step_count(int n_nodes, int n_wavelengths, bool allow_all2all) {
  if (n_nodes < 2) throw DomainError("WRHT needs at least 2 nodes");
  const int m = choose_group_size(n_wavelengths);
  const int levels = ceil_log(m, n_nodes);
  long long span = 1;
  for (int i = 0; i + 1 < levels; ++i) span *= m;
  const int last_reps = static_cast<int>((n_nodes + span - 1) / span);
  const bool all2all = allow_all2all && all2all_feasible(last_reps, n_wavelengths);
  return all2all ? 2 * levels - 1 : 2 * levels;
}

}  // namespace opticollect
