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

#include "opticollect/ring_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "opticollect/error.hpp"

namespace opticollect {

std::string_view to_string(Direction d) noexcept {
  return d == Direction::kClockwise ? "cw" : "ccw";
}

RingTopology::RingTopology(int n_nodes, int n_wavelengths,
                           int fibers_per_direction,
                           double bandwidth_per_wavelength,
                           double reconfig_delay)
    : n_nodes_(n_nodes),
      n_wavelengths_(n_wavelengths),
      fibers_per_direction_(fibers_per_direction),
      bandwidth_(bandwidth_per_wavelength),
      reconfig_delay_(reconfig_delay) {
  if (n_nodes < 2) throw DomainError("ring needs at least 2 nodes");
  if (n_wavelengths < 1) throw DomainError("ring needs at least 1 wavelength");
  if (fibers_per_direction < 1 || fibers_per_direction > 255)
    throw DomainError("fibers_per_direction must be in [1, 255]");
  if (!(bandwidth_per_wavelength > 0.0))
    throw DomainError("bandwidth_per_wavelength must be positive");
  if (!(reconfig_delay >= 0.0))
    throw DomainError("reconfig_delay must be non-negative");
}

NodeId RingTopology::next(NodeId node, Direction d) const noexcept {
  return d == Direction::kClockwise ? (node + 1) % n_nodes_
                                    : (node - 1 + n_nodes_) % n_nodes_;
}

int RingTopology::distance(NodeId src, NodeId dst, Direction d) const noexcept {
  const int forward = ((dst - src) % n_nodes_ + n_nodes_) % n_nodes_;
  if (forward == 0) return 0;
  return d == Direction::kClockwise ? forward : n_nodes_ - forward;
}

std::string to_string(const LinkSegment& s) {
  return "(" + std::to_string(s.from) + "->" + std::to_string(s.to) + " " +
         std::string(to_string(s.direction)) + " f" +
         std::to_string(s.fiber) + ")";
}

std::vector<LinkSegment> arc_path(const RingTopology& topology, NodeId src,
                                  NodeId dst, Direction direction, int fiber) {
  if (!topology.contains(src) || !topology.contains(dst))
    throw DomainError("arc_path: node index out of range");
  if (fiber < 0 || fiber >= topology.fibers_per_direction())
    throw DomainError("arc_path: fiber index out of range");
  if (src == dst) throw EmptyPath("arc_path: src == dst");

  std::vector<LinkSegment> path;
  path.reserve(static_cast<std::size_t>(topology.distance(src, dst, direction)));
  for (NodeId at = src; at != dst;) {
    const NodeId to = topology.next(at, direction);
    path.push_back({at, to, direction, static_cast<std::uint8_t>(fiber)});
    at = to;
  }
  return path;
}

Route shortest_direction(const RingTopology& topology, NodeId src, NodeId dst) {
  if (!topology.contains(src) || !topology.contains(dst))
    throw DomainError("shortest_direction: node index out of range");
  if (src == dst) throw DomainError("shortest_direction: src == dst");
  const int cw = topology.distance(src, dst, Direction::kClockwise);
  const int ccw = topology.n_nodes() - cw;
  if (cw <= ccw) return {Direction::kClockwise, cw};
  return {Direction::kCounterClockwise, ccw};
}

void FatTreeParams::validate() const {
  if (router_ports <= 0 || levels <= 0 || packet_size <= 0 ||
      !(link_bandwidth > 0.0) || !(router_delay > 0.0))
    throw DomainError("fat-tree parameters must all be positive");
}

void Workload::validate() const {
  if (param_count <= 0) throw DomainError("workload param_count must be > 0");
  if (bytes_per_param <= 0)
    throw DomainError("workload bytes_per_param must be > 0");
}

double payload_bits(const Workload& workload) {
  workload.validate();
  return static_cast<double>(workload.param_count) * workload.bytes_per_param *
         8.0;
}

namespace {

const std::array<Workload, 4> kPresets = {{
    {"AlexNet", 62'300'000, 4},
    {"VGG16", 138'000'000, 4},
    {"ResNet50", 25'000'000, 4},
    {"GoogLeNet", 6'797'700, 4},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::span<const Workload> workload_presets() noexcept { return kPresets; }

std::optional<Workload> find_workload(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& w : kPresets)
    if (lower(w.name) == key) return w;
  return std::nullopt;
}

}  // namespace opticollect
