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

#include "opticollect/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>

#include "opticollect/error.hpp"
#include "opticollect/wrht.hpp"

namespace opticollect {

CostModel::CostModel(double bandwidth_per_wavelength, double step_overhead,
                     double payload_bits)
    : bandwidth_(bandwidth_per_wavelength),
      overhead_(step_overhead),
      payload_(payload_bits) {
  if (!(bandwidth_ > 0.0)) throw DomainError("cost model: B must be > 0");
  if (!(overhead_ >= 0.0)) throw DomainError("cost model: a must be >= 0");
  if (!(payload_ > 0.0)) throw DomainError("cost model: d must be > 0");
}

CostModel CostModel::from(const RingTopology& topology, const Workload& workload) {
  return CostModel(topology.bandwidth_per_wavelength(),
                   topology.reconfig_delay(), opticollect::payload_bits(workload));
}

double comm_time(int steps, const CostModel& model) {
  if (steps < 1) throw DomainError("comm_time: need at least one step");
  return model.payload_bits() * steps / model.bandwidth_per_wavelength() +
         model.step_overhead() * steps;
}

int lower_bound_steps(int n_nodes, int n_wavelengths) {
  if (n_nodes < 2) throw DomainError("lower bound needs N >= 2");
  return 2 * ceil_log(choose_group_size(n_wavelengths), n_nodes);
}

double lower_bound_time(int n_nodes, int n_wavelengths, const CostModel& model) {
  if (n_nodes < 2) throw DomainError("lower bound needs N >= 2");
  const int levels = ceil_log(choose_group_size(n_wavelengths), n_nodes);
  return 2 * model.payload_bits() * levels / model.bandwidth_per_wavelength() +
         2 * model.step_overhead() * levels;
}

namespace {

double largest_payload(const Step& step) {
  double worst = 0.0;
  for (const Transfer& t : step.transfers) worst = std::max(worst, t.payload_bits);
  return worst;
}

}  // namespace

TimingReport simulate_time(const Schedule& schedule, const CostModel& model,
                           int n_wavelengths) {
  schedule.validate();
  for (const Step& step : schedule.steps)
    for (const Transfer& t : step.transfers)
      if (!t.wavelength)
        throw IncompleteAssignment("simulate_time: step " +
                                   std::to_string(step.index) +
                                   " has an unassigned transfer");

  TimingReport r;
  r.algorithm = schedule.algorithm;
  r.n_nodes = schedule.n_nodes;
  r.n_wavelengths = n_wavelengths;
  r.steps = schedule.step_count();
  const double scale = model.payload_bits() / schedule.payload_unit_bits;
  r.per_step_times.reserve(schedule.steps.size());
  for (const Step& step : schedule.steps) {
    const double t = largest_payload(step) * scale / model.bandwidth_per_wavelength() +
                     model.step_overhead();
    r.per_step_times.push_back(t);
    r.total_time += t;
  }
  if (n_wavelengths > 0) {
    r.lower_bound_steps = lower_bound_steps(schedule.n_nodes, n_wavelengths);
    r.lower_bound_time = lower_bound_time(schedule.n_nodes, n_wavelengths, model);
  }
  return r;
}

TimingReport electrical_time(const Schedule& schedule,
                             const FatTreeParams& params) {
  params.validate();
  schedule.validate();
  if (schedule.algorithm != AlgorithmId::kRing &&
      schedule.algorithm != AlgorithmId::kRD)
    throw DomainError("electrical_time: only Ring and RD run on the fat-tree");

  TimingReport r;
  r.algorithm = schedule.algorithm;
  r.n_nodes = schedule.n_nodes;
  r.steps = schedule.step_count();
  const double hop_delay = params.worst_case_hops() * params.router_delay;
  for (const Step& step : schedule.steps) {
    for (const Transfer& t : step.transfers)
      if (t.wavelength) r.wavelengths_ignored = true;
    const double t = hop_delay + largest_payload(step) / params.link_bandwidth;
    r.per_step_times.push_back(t);
    r.total_time += t;
  }
  return r;
}

namespace {

// Keep the contributor bitsets of a batch of chunk segments under this size.
constexpr std::size_t kStateBudgetBytes = std::size_t{256} << 20;

struct Pair {
  int segment;  // batch-local
  NodeId src;
  NodeId dst;
};

}  // namespace

Verdict verify_allreduce(const Schedule& schedule) {
  schedule.validate();
  const int n = schedule.n_nodes;
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;

  // Lanes that every transfer moves together collapse into one segment.
  std::vector<std::int32_t> cuts{0, schedule.n_chunks};
  for (const Step& step : schedule.steps)
    for (const Transfer& t : step.transfers) {
      cuts.push_back(t.chunks.begin);
      cuts.push_back(t.chunks.end);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const int segments = static_cast<int>(cuts.size()) - 1;
  std::vector<std::int32_t> segment_at(static_cast<std::size_t>(schedule.n_chunks) + 1);
  for (int seg = 0; seg < segments; ++seg)
    std::fill(segment_at.begin() + cuts[seg], segment_at.begin() + cuts[seg + 1],
              seg);
  segment_at.back() = segments;
  auto segment_of = [&](std::int32_t lane) { return segment_at[lane]; };

  const std::size_t row_bytes = static_cast<std::size_t>(n) * words * 8;
  const int batch = static_cast<int>(
      std::clamp<std::size_t>(kStateBudgetBytes / row_bytes, 1, segments));

  // Transfers touching each batch, as flat indices in step order.
  const int n_batches = (segments + batch - 1) / batch;
  std::vector<std::size_t> step_end;
  std::vector<std::vector<std::uint32_t>> touching(static_cast<std::size_t>(n_batches));
  {
    std::uint32_t flat = 0;
    for (const Step& step : schedule.steps) {
      for (const Transfer& t : step.transfers) {
        const int lo = segment_of(t.chunks.begin) / batch;
        const int hi = (segment_of(t.chunks.end) - 1) / batch;
        for (int b = lo; b <= hi; ++b) touching[b].push_back(flat);
        ++flat;
      }
      step_end.push_back(flat);
    }
  }
  std::vector<std::uint64_t> state;
  std::vector<std::uint64_t> staged;
  std::vector<Pair> pairs;
  std::optional<Verdict> worst;
  for (int b = 0; b < n_batches; ++b) {
    const int first = b * batch;
    const int last = std::min(segments, first + batch);
    const int width = last - first;
    state.assign(static_cast<std::size_t>(width) * n * words, 0);
    auto row = [&](int seg, NodeId node) {
      return &state[(static_cast<std::size_t>(seg) * n + node) * words];
    };
    for (int seg = 0; seg < width; ++seg)
      for (NodeId i = 0; i < n; ++i)
        row(seg, i)[i / 64] |= std::uint64_t{1} << (i % 64);

    // Every transfer in a step reads the sender's state from before it.
    auto flush = [&] {
      if (pairs.empty()) return;
      staged.resize(pairs.size() * words);
      for (std::size_t p = 0; p < pairs.size(); ++p)
        std::copy_n(row(pairs[p].segment, pairs[p].src), words, &staged[p * words]);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::uint64_t* dst = row(pairs[p].segment, pairs[p].dst);
        for (std::size_t w = 0; w < words; ++w) dst[w] |= staged[p * words + w];
      }
      pairs.clear();
    };
    std::size_t step = 0;
    for (std::uint32_t flat : touching[b]) {
      if (flat >= step_end[step]) {
        flush();
        while (flat >= step_end[step]) ++step;
      }
      const std::size_t begin = step == 0 ? 0 : step_end[step - 1];
      const Transfer& t = schedule.steps[step].transfers[flat - begin];
      const int lo = std::max(first, segment_of(t.chunks.begin));
      const int hi = std::min(last, segment_of(t.chunks.end));
      for (int seg = lo; seg < hi; ++seg)
        pairs.push_back({seg - first, t.src, t.dst});
    }
    flush();
    std::vector<std::uint32_t>().swap(touching[b]);

    // Lowest failing node wins; ties keep the earliest lane.
    const NodeId limit = worst ? *worst->node : n;
    bool found = false;
    for (NodeId node = 0; node < limit && !found; ++node) {
      for (int seg = 0; seg < width; ++seg) {
        const std::uint64_t* bits = row(seg, node);
        std::size_t w = 0;
        for (; w < words; ++w) {
          const std::size_t live = std::min<std::size_t>(64, n - w * 64);
          const std::uint64_t full =
              live == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << live) - 1;
          if (bits[w] != full) break;
        }
        if (w == words) continue;
        Verdict v;
        v.node = node;
        v.missing = static_cast<NodeId>(w * 64 + std::countr_one(bits[w]));
        v.chunk = cuts[first + seg];
        worst = v;
        found = true;
        break;
      }
    }
  }
  if (worst) {
    worst->message = "node " + std::to_string(*worst->node) +
                     " lacks contributor " + std::to_string(*worst->missing) +
                     " on chunk lane " + std::to_string(*worst->chunk);
    return *worst;
  }
  Verdict v;
  v.pass = true;
  v.message = "PASS";
  return v;
}

}  // namespace opticollect
