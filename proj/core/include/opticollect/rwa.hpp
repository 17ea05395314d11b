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

#ifndef OPTICOLLECT_RWA_HPP
#define OPTICOLLECT_RWA_HPP

#include <cstddef>
#include <vector>

#include "opticollect/error.hpp"
#include "opticollect/schedule.hpp"

namespace opticollect {

// First-fit needed a wavelength index >= w.
class WavelengthExhausted : public Error {
 public:
  WavelengthExhausted(Transfer transfer, int needed, int link_load,
                      int step_index);

  const Transfer& transfer() const noexcept { return transfer_; }
  // Wavelengths the transfer would have needed (index + 1).
  int needed() const noexcept { return needed_; }
  // Arcs sharing the busiest segment of the transfer's path.
  int link_load() const noexcept { return link_load_; }
  int step_index() const noexcept { return step_index_; }

 private:
  Transfer transfer_;
  int needed_;
  int link_load_;
  int step_index_;
};

// Transfers sorted by (src, dst), each given the lowest wavelength not yet
// taken on any segment of its path (same fiber and direction). The returned
// step keeps that sorted order. Throws DomainError if a wavelength is already
// present, WavelengthExhausted if an index >= w is required.
Step assign_first_fit(const Step& step, const RingTopology& topology);

// First-fit with an ordering search: tries (src, dst) order, and if that
// uses more wavelengths than the step's heaviest link carries, retries each
// (direction, fiber) class with cut-point orders (arcs crossing the cut
// first, then by start offset from the cut) and keeps the fewest.
Step assign_wavelengths(const Step& step, const RingTopology& topology);

// assign_wavelengths over every step.
Schedule assign_schedule(Schedule schedule, const RingTopology& topology);

struct Conflict {
  std::size_t first = 0;  // transfer indices within the step
  std::size_t second = 0;
  LinkSegment segment;
  int wavelength = 0;
};

// Every (segment, wavelength) pair claimed by more than one transfer; each
// later claimant is reported against the first. Throws IncompleteAssignment
// if any transfer has no wavelength.
std::vector<Conflict> conflict_check(const Step& step,
                                     const RingTopology& topology);

// Distinct wavelength indices used by the step (0 for an empty step).
int wavelengths_used(const Step& step);

// Largest number of transfers sharing one segment (fiber and direction
// included). A lower bound on any conflict-free assignment.
int max_link_load(const Step& step, const RingTopology& topology);

// Wavelengths a k-member group needs to collect at its middle node:
// ceil((k-1)/2).
int group_wavelength_demand(int members);

// Wavelengths for a shortest-arc all-to-all among r ring nodes: ceil(r^2/8).
int a2a_wavelength_bound(int representatives);

}  // namespace opticollect

#endif  // OPTICOLLECT_RWA_HPP
