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

#include "opticollect/baselines.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

#include "opticollect/error.hpp"
#include "opticollect/wrht.hpp"

namespace opticollect {

namespace {

void require_nodes(int n_nodes) {
  if (n_nodes < 2) throw DomainError("all-reduce needs at least 2 nodes");
}

void require_payload(double payload_bits) {
  if (!(payload_bits > 0.0)) throw DomainError("payload must be positive");
}

Schedule empty_schedule(AlgorithmId alg, int n_nodes, double payload_bits,
                        int n_chunks) {
  Schedule s;
  s.algorithm = alg;
  s.n_nodes = n_nodes;
  s.payload_unit_bits = payload_bits;
  s.n_chunks = n_chunks;
  return s;
}

Transfer make_transfer(NodeId src, NodeId dst, Direction dir, double payload,
                       ChunkRange chunks) {
  Transfer t;
  t.payload_bits = payload;
  t.src = src;
  t.dst = dst;
  t.direction = dir;
  t.chunks = chunks;
  return t;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

Direction shorter_way(int n_nodes, NodeId src, NodeId dst) {
  const int cw = mod(dst - src, n_nodes);
  return cw <= n_nodes - cw ? Direction::kClockwise
                            : Direction::kCounterClockwise;
}

void check_hring(int n_nodes, int group, int n_wavelengths) {
  require_nodes(n_nodes);
  if (n_wavelengths < 1) throw DomainError("need at least one wavelength");
  if (group < 2) throw DomainError("H-Ring group size must be >= 2");
  if (group > n_nodes) throw DomainError("H-Ring group size exceeds N");
  if (n_nodes % group != 0)
    throw DomainError("H-Ring group size " + std::to_string(group) +
                      " does not divide N=" + std::to_string(n_nodes));
  if (n_nodes / group < 2)
    throw DomainError("H-Ring needs at least two groups");
}

}  // namespace

AnalyticSteps analytic_steps(AlgorithmId alg, int n_nodes, int n_wavelengths,
                             int group, bool allow_all2all) {
  require_nodes(n_nodes);
  if (n_wavelengths < 1) throw DomainError("need at least one wavelength");
  const long long n = n_nodes;
  switch (alg) {
    case AlgorithmId::kRing:
      return {2 * (n - 1), true};
    case AlgorithmId::kBT:
      return {2LL * ceil_log(2, n), true};
    case AlgorithmId::kHRing: {
      if (group < 2) throw DomainError("H-Ring group size must be >= 2");
      if (group > n_nodes) throw DomainError("H-Ring group size exceeds N");
      const long long g = group;
      const long long num = 2 * (g * g + n);
      const long long lanes = (g + n_wavelengths - 1) / n_wavelengths;
      const bool exact = num % g == 0;
      const long long head = (num + g - 1) / g;
      return {head + lanes - 4, exact};
    }
    case AlgorithmId::kRD: {
      const auto un = static_cast<unsigned>(n_nodes);
      const int floor_log = std::bit_width(un) - 1;
      return {std::has_single_bit(un) ? floor_log : floor_log + 2, true};
    }
    case AlgorithmId::kWrht:
      return {wrht_step_count(n_nodes, n_wavelengths, allow_all2all), true};
  }
  throw DomainError("unknown algorithm");
}

Schedule build_ring(int n_nodes, double payload_bits) {
  require_nodes(n_nodes);
  require_payload(payload_bits);
  Schedule s = empty_schedule(AlgorithmId::kRing, n_nodes, payload_bits, n_nodes);
  const double chunk = payload_bits / n_nodes;
  s.steps.reserve(2 * static_cast<std::size_t>(n_nodes - 1));
  for (int phase = 0; phase < 2; ++phase) {
    for (int k = 0; k + 1 < n_nodes; ++k) {
      Step step;
      step.stage = phase == 0 ? Stage::kReduce : Stage::kBroadcast;
      step.transfers.reserve(n_nodes);
      for (int i = 0; i < n_nodes; ++i) {
        // Reduce-scatter pushes lane i-k; all-gather forwards lane i+1-k.
        const int lane = phase == 0 ? mod(i - k, n_nodes) : mod(i + 1 - k, n_nodes);
        step.transfers.push_back(make_transfer(i, (i + 1) % n_nodes,
                                               Direction::kClockwise, chunk,
                                               {lane, lane + 1}));
      }
      s.steps.push_back(std::move(step));
    }
  }
  s.reindex();
  return s;
}

Schedule build_bt(int n_nodes, double payload_bits) {
  require_nodes(n_nodes);
  require_payload(payload_bits);
  Schedule s = empty_schedule(AlgorithmId::kBT, n_nodes, payload_bits, 1);
  const int depth = ceil_log(2, n_nodes);
  std::vector<Step> reduce;
  for (int i = 1; i <= depth; ++i) {
    const int span = 1 << i;
    const int offset = span / 2;
    Step step;
    step.stage = Stage::kReduce;
    for (int head = 0; head + offset < n_nodes; head += span)
      step.transfers.push_back(make_transfer(head + offset, head,
                                             Direction::kCounterClockwise,
                                             payload_bits, {0, 1}));
    reduce.push_back(std::move(step));
  }
  s.steps = reduce;
  for (auto it = reduce.rbegin(); it != reduce.rend(); ++it) {
    Step step;
    step.stage = Stage::kBroadcast;
    for (Transfer t : it->transfers) {
      std::swap(t.src, t.dst);
      t.direction = opposite(t.direction);
      step.transfers.push_back(t);
    }
    s.steps.push_back(std::move(step));
  }
  s.reindex();
  return s;
}

long long hring_constructed_steps(int n_nodes, int group, int n_wavelengths) {
  check_hring(n_nodes, group, n_wavelengths);
  const long long groups = n_nodes / group;
  const long long batches = (group + n_wavelengths - 1) / n_wavelengths;
  return 2LL * (group - 1) + 2 * (groups - 1) * batches;
}

Schedule build_hring(int n_nodes, int group, int n_wavelengths,
                     double payload_bits) {
  check_hring(n_nodes, group, n_wavelengths);
  require_payload(payload_bits);
  const int g = group;
  const int groups = n_nodes / g;
  // Lane layout: block j of the gradient is lanes [j*groups, (j+1)*groups).
  Schedule s = empty_schedule(AlgorithmId::kHRing, n_nodes, payload_bits, n_nodes);
  const double block_bits = payload_bits / g;
  const double lane_bits = payload_bits / n_nodes;
  auto block = [&](int j) { return ChunkRange{j * groups, (j + 1) * groups}; };

  auto intra = [&](bool gather) {
    for (int k = 0; k + 1 < g; ++k) {
      Step step;
      step.stage = gather ? Stage::kBroadcast : Stage::kReduce;
      for (int grp = 0; grp < groups; ++grp) {
        for (int i = 0; i < g; ++i) {
          const int j = gather ? mod(i + 1 - k, g) : mod(i - k, g);
          const bool wraps = i + 1 == g;
          step.transfers.push_back(make_transfer(
              grp * g + i, grp * g + (i + 1) % g,
              wraps ? Direction::kCounterClockwise : Direction::kClockwise,
              block_bits, block(j)));
        }
      }
      s.steps.push_back(std::move(step));
    }
  };

  intra(false);

  // After the intra reduce-scatter member i owns block (i+1) mod g, so block
  // j's lane ring runs through member (j-1) mod g of every group.
  for (int first = 0; first < g; first += n_wavelengths) {
    const int last = std::min(g, first + n_wavelengths);
    for (int phase = 0; phase < 2; ++phase) {
      for (int k = 0; k + 1 < groups; ++k) {
        Step step;
        step.stage = phase == 0 ? Stage::kReduce : Stage::kBroadcast;
        for (int j = first; j < last; ++j) {
          const int member = mod(j - 1, g);
          for (int grp = 0; grp < groups; ++grp) {
            const int sub = phase == 0 ? mod(grp - k, groups)
                                       : mod(grp + 1 - k, groups);
            const int lane = j * groups + sub;
            step.transfers.push_back(make_transfer(
                grp * g + member, ((grp + 1) % groups) * g + member,
                Direction::kClockwise, lane_bits, {lane, lane + 1}));
          }
        }
        s.steps.push_back(std::move(step));
      }
    }
  }

  intra(true);
  s.reindex();
  return s;
}

Schedule build_rd(int n_nodes, double payload_bits) {
  require_nodes(n_nodes);
  require_payload(payload_bits);
  Schedule s = empty_schedule(AlgorithmId::kRD, n_nodes, payload_bits, 1);
  const auto un = static_cast<unsigned>(n_nodes);
  const int core = static_cast<int>(std::bit_floor(un));
  const int extras = n_nodes - core;
  auto send = [&](NodeId a, NodeId b) {
    return make_transfer(a, b, shorter_way(n_nodes, a, b), payload_bits, {0, 1});
  };

  if (extras > 0) {
    Step fold;
    fold.stage = Stage::kReduce;
    for (int i = 0; i < extras; ++i) fold.transfers.push_back(send(core + i, i));
    s.steps.push_back(std::move(fold));
  }
  for (int dist = 1; dist < core; dist <<= 1) {
    Step step;
    step.stage = Stage::kAllToAll;
    for (int x = 0; x < core; ++x) step.transfers.push_back(send(x, x ^ dist));
    s.steps.push_back(std::move(step));
  }
  if (extras > 0) {
    Step unfold;
    unfold.stage = Stage::kBroadcast;
    for (int i = 0; i < extras; ++i) unfold.transfers.push_back(send(i, core + i));
    s.steps.push_back(std::move(unfold));
  }
  s.reindex();
  return s;
}

}  // namespace opticollect
