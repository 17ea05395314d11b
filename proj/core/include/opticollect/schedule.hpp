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

#ifndef OPTICOLLECT_SCHEDULE_HPP
#define OPTICOLLECT_SCHEDULE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opticollect/ring_model.hpp"

namespace opticollect {

enum class AlgorithmId : std::uint8_t { kWrht, kRing, kHRing, kBT, kRD };

std::string_view to_string(AlgorithmId id) noexcept;
std::optional<AlgorithmId> parse_algorithm(std::string_view name);

enum class Stage : std::uint8_t { kReduce, kAllToAll, kBroadcast };

std::string_view to_string(Stage s) noexcept;

// Half-open range of chunk lanes [begin, end) out of Schedule::n_chunks.
// A full-payload transfer covers every lane.
struct ChunkRange {
  std::int32_t begin = 0;
  std::int32_t end = 1;

  std::int32_t size() const noexcept { return end - begin; }
  friend bool operator==(const ChunkRange&, const ChunkRange&) = default;
};

struct Transfer {
  double payload_bits = 0.0;
  NodeId src = 0;
  NodeId dst = 0;
  ChunkRange chunks;
  std::optional<std::int16_t> wavelength;
  Direction direction = Direction::kClockwise;
  std::uint8_t fiber = 0;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct Step {
  int index = 0;
  Stage stage = Stage::kReduce;
  std::vector<Transfer> transfers;
};

struct Schedule {
  AlgorithmId algorithm = AlgorithmId::kWrht;
  int n_nodes = 0;
  double payload_unit_bits = 1.0;  // d
  std::int32_t n_chunks = 1;
  std::vector<Step> steps;

  int step_count() const noexcept { return static_cast<int>(steps.size()); }

  // Checks steps non-empty, consecutive indices, node/chunk ranges,
  // src != dst and positive payloads. Throws DomainError.
  void validate() const;

  // Renumbers steps 0..n-1 after steps were removed or spliced.
  void reindex() noexcept;
};

// Path of a transfer on a topology with the schedule's node count.
std::vector<LinkSegment> transfer_path(const RingTopology& topology,
                                       const Transfer& t);

}  // namespace opticollect

#endif  // OPTICOLLECT_SCHEDULE_HPP
