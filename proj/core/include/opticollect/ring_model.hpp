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

#ifndef OPTICOLLECT_RING_MODEL_HPP
#define OPTICOLLECT_RING_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace opticollect {

using NodeId = std::int32_t;

enum class Direction : std::uint8_t { kClockwise, kCounterClockwise };

constexpr Direction opposite(Direction d) noexcept {
  return d == Direction::kClockwise ? Direction::kCounterClockwise
                                    : Direction::kClockwise;
}

std::string_view to_string(Direction d) noexcept;

// Optical WDM ring. Every node owns a transmitter/receiver set per direction
// and each direction is carried by `fibers_per_direction` parallel fibers,
// each offering `n_wavelengths` channels of `bandwidth_per_wavelength` bit/s.
// `reconfig_delay` is the fixed per-step overhead (MRR retuning plus O/E/O).
class RingTopology {
 public:
  RingTopology(int n_nodes, int n_wavelengths, int fibers_per_direction = 2,
               double bandwidth_per_wavelength = 40e9,
               double reconfig_delay = 25e-6);

  int n_nodes() const noexcept { return n_nodes_; }
  int n_wavelengths() const noexcept { return n_wavelengths_; }
  int fibers_per_direction() const noexcept { return fibers_per_direction_; }
  double bandwidth_per_wavelength() const noexcept { return bandwidth_; }
  double reconfig_delay() const noexcept { return reconfig_delay_; }

  bool contains(NodeId node) const noexcept {
    return node >= 0 && node < n_nodes_;
  }
  NodeId next(NodeId node, Direction d) const noexcept;

  // Number of hops from src to dst travelling in direction d (0 when equal).
  int distance(NodeId src, NodeId dst, Direction d) const noexcept;

 private:
  int n_nodes_;
  int n_wavelengths_;
  int fibers_per_direction_;
  double bandwidth_;
  double reconfig_delay_;
};

// One hop of one fiber. `to` is always the ring neighbour of `from` in
// `direction`.
struct LinkSegment {
  NodeId from = 0;
  NodeId to = 0;
  Direction direction = Direction::kClockwise;
  std::uint8_t fiber = 0;

  friend bool operator==(const LinkSegment&, const LinkSegment&) = default;
};

std::string to_string(const LinkSegment& s);

// Segment chain from src to dst along `direction` on `fiber`.
// Throws EmptyPath when src == dst and DomainError for out-of-range indices.
std::vector<LinkSegment> arc_path(const RingTopology& topology, NodeId src,
                                  NodeId dst, Direction direction,
                                  int fiber = 0);

struct Route {
  Direction direction = Direction::kClockwise;
  int hops = 0;

  friend bool operator==(const Route&, const Route&) = default;
};

// Fewest-hop direction; an exact half-ring tie resolves to clockwise.
Route shortest_direction(const RingTopology& topology, NodeId src, NodeId dst);

// Two-level electrical fat-tree used as the baseline interconnect.
struct FatTreeParams {
  int router_ports = 32;
  int levels = 2;
  double link_bandwidth = 25e9;  // bit/s
  double router_delay = 50e-6;   // s
  int packet_size = 64;          // bytes; recorded only

  void validate() const;
  // Worst-case up/down route length through the tree.
  int worst_case_hops() const noexcept { return 2 * levels; }
};

struct Workload {
  std::string name;
  std::int64_t param_count = 0;
  int bytes_per_param = 4;

  void validate() const;
};

// Gradient size in bits: params x bytes/param x 8.
double payload_bits(const Workload& workload);

// AlexNet, VGG16, ResNet50, GoogLeNet. Lookup is case-insensitive.
std::span<const Workload> workload_presets() noexcept;
std::optional<Workload> find_workload(std::string_view name);

}  // namespace opticollect

template <>
struct std::hash<opticollect::LinkSegment> {
  std::size_t operator()(const opticollect::LinkSegment& s) const noexcept {
    return (static_cast<std::size_t>(s.from) << 10) ^
           (static_cast<std::size_t>(s.direction) << 8) ^ s.fiber;
  }
};

#endif  // OPTICOLLECT_RING_MODEL_HPP
