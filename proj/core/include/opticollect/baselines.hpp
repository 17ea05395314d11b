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

#ifndef OPTICOLLECT_BASELINES_HPP
#define OPTICOLLECT_BASELINES_HPP

#include "opticollect/schedule.hpp"

namespace opticollect {

struct AnalyticSteps {
  long long steps = 0;
  // False when the closed form is not an integer (H-Ring with g not dividing
  // 2N); `steps` is then rounded up.
  bool exact = true;
};

// Closed-form step counts:
//   Ring   2(N-1)
//   BT     2 ceil(log2 N)
//   HRing  2(g^2+N)/g + ceil(g/w) - 4
//   RD     log2 N for powers of two, floor(log2 N) + 2 otherwise
//   WRHT   wrht_step_count(N, w, allow_all2all)
// `group` is only read for HRing, `allow_all2all` only for WRHT.
AnalyticSteps analytic_steps(AlgorithmId alg, int n_nodes, int n_wavelengths,
                             int group = 0, bool allow_all2all = true);

// Reduce-scatter then all-gather on N lanes of d/N; node i always sends to
// i+1 clockwise.
Schedule build_ring(int n_nodes, double payload_bits = 1.0);

// Binary tree over consecutive node indices; 2 ceil(log2 N) steps of d.
Schedule build_bt(int n_nodes, double payload_bits = 1.0);

// Hierarchical ring with groups of g consecutive nodes: intra-group
// reduce-scatter, g inter-group lane rings (batched ceil(g/w) at a time),
// intra-group all-gather. Requires g | N and N/g >= 2.
Schedule build_hring(int n_nodes, int group, int n_wavelengths,
                     double payload_bits = 1.0);

// Steps the H-Ring construction takes: 2(g-1) + 2(N/g-1) ceil(g/w).
long long hring_constructed_steps(int n_nodes, int group, int n_wavelengths);

// Full-payload recursive doubling; non-powers of two fold the N - 2^k extra
// nodes into the first 2^k before the exchange and hand results back after.
Schedule build_rd(int n_nodes, double payload_bits = 1.0);

}  // namespace opticollect

#endif  // OPTICOLLECT_BASELINES_HPP
