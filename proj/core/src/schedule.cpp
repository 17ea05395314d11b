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

#include "opticollect/schedule.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include "opticollect/error.hpp"

namespace opticollect {

namespace {

constexpr std::array<std::pair<AlgorithmId, std::string_view>, 5> kNames = {{
    {AlgorithmId::kWrht, "WRHT"},
    {AlgorithmId::kRing, "Ring"},
    {AlgorithmId::kHRing, "HRing"},
    {AlgorithmId::kBT, "BT"},
    {AlgorithmId::kRD, "RD"},
}};

}  // namespace

std::string_view to_string(AlgorithmId id) noexcept {
  for (const auto& [k, v] : kNames)
    if (k == id) return v;
  return "?";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
  std::string key(name);
  std::erase(key, '-');
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (const auto& [k, v] : kNames) {
    std::string cand(v);
    std::transform(cand.begin(), cand.end(), cand.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (cand == key) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Stage s) noexcept {
  switch (s) {
    case Stage::kReduce:
      return "reduce";
    case Stage::kAllToAll:
      return "all2all";
    case Stage::kBroadcast:
      return "broadcast";
  }
  return "?";
}

void Schedule::validate() const {
  if (n_nodes < 2) throw DomainError("schedule needs at least 2 nodes");
  if (n_chunks < 1) throw DomainError("schedule needs at least 1 chunk lane");
  if (!(payload_unit_bits > 0.0))
    throw DomainError("schedule payload unit must be positive");
  if (steps.empty()) throw DomainError("schedule has no steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& step = steps[i];
    if (step.index != static_cast<int>(i))
      throw DomainError("schedule step indices are not consecutive from 0");
    for (const Transfer& t : step.transfers) {
      if (t.src < 0 || t.src >= n_nodes || t.dst < 0 || t.dst >= n_nodes)
        throw DomainError("transfer references out-of-range node in step " +
                          std::to_string(i));
      if (t.src == t.dst)
        throw DomainError("transfer with src == dst in step " +
                          std::to_string(i));
      if (!(t.payload_bits > 0.0))
        throw DomainError("transfer with non-positive payload in step " +
                          std::to_string(i));
      if (t.chunks.begin < 0 || t.chunks.end > n_chunks ||
          t.chunks.begin >= t.chunks.end)
        throw DomainError("transfer chunk range out of bounds in step " +
                          std::to_string(i));
    }
  }
}

void Schedule::reindex() noexcept {
  for (std::size_t i = 0; i < steps.size(); ++i)
    steps[i].index = static_cast<int>(i);
}

std::vector<LinkSegment> transfer_path(const RingTopology& topology,
                                       const Transfer& t) {
  return arc_path(topology, t.src, t.dst, t.direction, t.fiber);
}

}  // namespace opticollect
