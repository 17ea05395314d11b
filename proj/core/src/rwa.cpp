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

#include "opticollect/rwa.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <utility>

namespace opticollect {

WavelengthExhausted::WavelengthExhausted(Transfer transfer, int needed,
                                         int link_load, int step_index)
    : Error("step " + std::to_string(step_index) + ": transfer " +
            std::to_string(transfer.src) + "->" + std::to_string(transfer.dst) +
            " (" + std::string(to_string(transfer.direction)) +
            ") needs wavelength index " + std::to_string(needed - 1) +
            "; busiest link on its path carries " + std::to_string(link_load) +
            " transfers"),
      transfer_(transfer),
      needed_(needed),
      link_load_(link_load),
      step_index_(step_index) {}

namespace {

int hops_of(const RingTopology& topo, const Transfer& t) {
  return topo.distance(t.src, t.dst, t.direction);
}

int class_of(const RingTopology& topo, const Transfer& t) {
  return static_cast<int>(t.direction) * topo.fibers_per_direction() + t.fiber;
}

// Calls fn(key) for every segment on the transfer's path, where
// key = class * N + (node the segment leaves).
template <typename Fn>
void for_each_link(const RingTopology& topo, const Transfer& t, Fn&& fn) {
  const int n = topo.n_nodes();
  const int base = class_of(topo, t) * n;
  const int hops = hops_of(topo, t);
  const int stride = t.direction == Direction::kClockwise ? 1 : n - 1;
  int at = t.src;
  for (int h = 0; h < hops; ++h) {
    fn(base + at);
    at = (at + stride) % n;
  }
}

void check_transfer(const RingTopology& topo, const Transfer& t) {
  if (!topo.contains(t.src) || !topo.contains(t.dst))
    throw DomainError("transfer node outside topology");
  if (t.src == t.dst) throw DomainError("transfer with src == dst");
  if (t.fiber >= topo.fibers_per_direction())
    throw DomainError("transfer fiber outside topology");
}

// Wavelength occupancy for the segments one step touches.
class Occupancy {
 public:
  Occupancy(const RingTopology& topo, std::span<const Transfer> transfers)
      : topo_(topo),
        slot_(static_cast<std::size_t>(2 * topo.fibers_per_direction()) *
                  topo.n_nodes(),
              -1) {
    for (const Transfer& t : transfers) {
      check_transfer(topo, t);
      for_each_link(topo, t, [&](int key) {
        if (slot_[key] < 0) {
          slot_[key] = static_cast<int>(load_.size());
          load_.push_back(0);
        }
        ++load_[slot_[key]];
      });
    }
    max_load_ = load_.empty() ? 0 : *std::max_element(load_.begin(), load_.end());
    words_ = std::max<std::size_t>(1, (max_load_ + 63) / 64);
    bits_.assign(load_.size() * words_, 0);
  }

  int max_load() const noexcept { return max_load_; }

  int path_load(const Transfer& t) const {
    int worst = 0;
    for_each_link(topo_, t, [&](int key) { worst = std::max(worst, load_[slot_[key]]); });
    return worst;
  }

  int first_free(const Transfer& t) const {
    scratch_.assign(words_, 0);
    for_each_link(topo_, t, [&](int key) {
      const std::uint64_t* w = &bits_[slot_[key] * words_];
      for (std::size_t i = 0; i < words_; ++i) scratch_[i] |= w[i];
    });
    for (std::size_t i = 0; i < words_; ++i)
      if (~scratch_[i] != 0)
        return static_cast<int>(i * 64 + std::countr_one(scratch_[i]));
    return static_cast<int>(words_ * 64);
  }

  void claim(const Transfer& t, int wavelength) {
    while (static_cast<std::size_t>(wavelength) >= words_ * 64) grow();
    const std::size_t word = wavelength / 64;
    const std::uint64_t bit = std::uint64_t{1} << (wavelength % 64);
    for_each_link(topo_, t, [&](int key) { bits_[slot_[key] * words_ + word] |= bit; });
  }

  void clear() { std::fill(bits_.begin(), bits_.end(), 0); }

 private:
  void grow() {
    const std::size_t wider = words_ * 2;
    std::vector<std::uint64_t> next(load_.size() * wider, 0);
    for (std::size_t s = 0; s < load_.size(); ++s)
      std::copy_n(&bits_[s * words_], words_, &next[s * wider]);
    bits_ = std::move(next);
    words_ = wider;
  }

  const RingTopology& topo_;
  std::vector<int> slot_;
  std::vector<int> load_;
  int max_load_ = 0;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> bits_;
  mutable std::vector<std::uint64_t> scratch_;
};

struct FitResult {
  std::vector<int> wavelength;  // per transfer index
  int used = 0;
};

FitResult first_fit(Occupancy& occ, std::span<const Transfer> transfers,
                    std::span<const std::size_t> order) {
  occ.clear();
  FitResult r;
  r.wavelength.assign(transfers.size(), -1);
  for (std::size_t idx : order) {
    const int w = occ.first_free(transfers[idx]);
    occ.claim(transfers[idx], w);
    r.wavelength[idx] = w;
    r.used = std::max(r.used, w + 1);
  }
  return r;
}

std::vector<std::size_t> source_dest_order(std::span<const Transfer> transfers) {
  std::vector<std::size_t> order(transfers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(transfers[a].src, transfers[a].dst) <
           std::tie(transfers[b].src, transfers[b].dst);
  });
  return order;
}

void require_unassigned(const Step& step) {
  for (const Transfer& t : step.transfers)
    if (t.wavelength)
      throw DomainError("step " + std::to_string(step.index) +
                        " already carries wavelength assignments");
}

[[noreturn]] void exhausted(const Step& step, std::span<const std::size_t> order,
                            const FitResult& fit, const Occupancy& occ, int limit) {
  for (std::size_t idx : order) {
    if (fit.wavelength[idx] >= limit) {
      const Transfer& t = step.transfers[idx];
      throw WavelengthExhausted(t, fit.wavelength[idx] + 1, occ.path_load(t),
                                step.index);
    }
  }
  throw Error("wavelength exhaustion without offending transfer");
}

Step emit(const Step& step, std::span<const std::size_t> order,
          const FitResult& fit) {
  Step out;
  out.index = step.index;
  out.stage = step.stage;
  out.transfers.reserve(step.transfers.size());
  for (std::size_t idx : order) {
    Transfer t = step.transfers[idx];
    t.wavelength = static_cast<std::int16_t>(fit.wavelength[idx]);
    out.transfers.push_back(t);
  }
  return out;
}

constexpr std::size_t kMaxCuts = 64;

// Best cut-point order for the transfers of one (direction, fiber) class.
std::vector<std::size_t> best_class_order(const RingTopology& topo,
                                          std::span<const Transfer> transfers,
                                          std::vector<std::size_t> members,
                                          Occupancy& occ, int class_load) {
  const int n = topo.n_nodes();
  // Unfold counterclockwise arcs so every arc covers increasing link ids.
  auto start_of = [&](std::size_t idx) {
    const Transfer& t = transfers[idx];
    return t.direction == Direction::kClockwise ? t.src : n - 1 - t.src;
  };
  std::vector<int> cuts;
  for (std::size_t idx : members) cuts.push_back(start_of(idx));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.size() > kMaxCuts) {
    std::vector<int> thinned;
    for (std::size_t i = 0; i < kMaxCuts; ++i)
      thinned.push_back(cuts[i * cuts.size() / kMaxCuts]);
    cuts = std::move(thinned);
  }

  std::vector<std::size_t> best = members;
  int best_used = first_fit(occ, transfers, best).used;
  for (int cut : cuts) {
    for (int longest_first = 0; longest_first < 2 && best_used > class_load;
         ++longest_first) {
      auto key = [&](std::size_t idx) {
        const int rel = ((start_of(idx) - cut) % n + n) % n;
        const int hops = hops_of(topo, transfers[idx]);
        const bool crosses = rel + hops > n;
        return std::make_tuple(!crosses, rel, longest_first ? -hops : hops, idx);
      };
      std::vector<std::size_t> order = members;
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
      const int used = first_fit(occ, transfers, order).used;
      if (used < best_used) {
        best_used = used;
        best = std::move(order);
      }
    }
    if (best_used <= class_load) break;
  }
  return best;
}

}  // namespace

Step assign_first_fit(const Step& step, const RingTopology& topology) {
  require_unassigned(step);
  Occupancy occ(topology, step.transfers);
  const auto order = source_dest_order(step.transfers);
  const FitResult fit = first_fit(occ, step.transfers, order);
  if (fit.used > topology.n_wavelengths())
    exhausted(step, order, fit, occ, topology.n_wavelengths());
  return emit(step, order, fit);
}

Step assign_wavelengths(const Step& step, const RingTopology& topology) {
  require_unassigned(step);
  Occupancy occ(topology, step.transfers);
  const auto sorted = source_dest_order(step.transfers);
  FitResult fit = first_fit(occ, step.transfers, sorted);
  std::vector<std::size_t> order = sorted;

  if (fit.used > occ.max_load()) {
    const int classes = 2 * topology.fibers_per_direction();
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t idx : sorted)
      members[class_of(topology, step.transfers[idx])].push_back(idx);
    order.clear();
    for (auto& cls : members) {
      if (cls.empty()) continue;
      std::vector<Transfer> subset;
      for (std::size_t idx : cls) subset.push_back(step.transfers[idx]);
      Occupancy class_occ(topology, subset);
      std::vector<std::size_t> local(cls.size());
      std::iota(local.begin(), local.end(), 0);
      const auto best = best_class_order(topology, subset, std::move(local),
                                         class_occ, class_occ.max_load());
      for (std::size_t i : best) order.push_back(cls[i]);
    }
    fit = first_fit(occ, step.transfers, order);
  }
  if (fit.used > topology.n_wavelengths())
    exhausted(step, order, fit, occ, topology.n_wavelengths());
  return emit(step, sorted, fit);
}

Schedule assign_schedule(Schedule schedule, const RingTopology& topology) {
  if (schedule.n_nodes != topology.n_nodes())
    throw DomainError("schedule and topology node counts differ");
  for (Step& step : schedule.steps) step = assign_wavelengths(step, topology);
  return schedule;
}

std::vector<Conflict> conflict_check(const Step& step,
                                     const RingTopology& topology) {
  struct Claim {
    int key;
    int wavelength;
    std::size_t transfer;
  };
  std::vector<Claim> claims;
  for (std::size_t i = 0; i < step.transfers.size(); ++i) {
    const Transfer& t = step.transfers[i];
    if (!t.wavelength)
      throw IncompleteAssignment("step " + std::to_string(step.index) +
                                 ": transfer " + std::to_string(t.src) + "->" +
                                 std::to_string(t.dst) + " has no wavelength");
    check_transfer(topology, t);
    for_each_link(topology, t,
                  [&](int key) { claims.push_back({key, *t.wavelength, i}); });
  }
  std::stable_sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
    return std::tie(a.key, a.wavelength) < std::tie(b.key, b.wavelength);
  });

  const int n = topology.n_nodes();
  const int fibers = topology.fibers_per_direction();
  std::vector<Conflict> out;
  for (std::size_t i = 0; i < claims.size();) {
    std::size_t j = i + 1;
    while (j < claims.size() && claims[j].key == claims[i].key &&
           claims[j].wavelength == claims[i].wavelength) {
      const int cls = claims[i].key / n;
      const NodeId from = claims[i].key % n;
      const auto dir = static_cast<Direction>(cls / fibers);
      LinkSegment seg{from, topology.next(from, dir), dir,
                      static_cast<std::uint8_t>(cls % fibers)};
      out.push_back({claims[i].transfer, claims[j].transfer, seg,
                     claims[i].wavelength});
      ++j;
    }
    i = j;
  }
  return out;
}

int wavelengths_used(const Step& step) {
  std::vector<int> seen;
  for (const Transfer& t : step.transfers)
    if (t.wavelength) seen.push_back(*t.wavelength);
  std::sort(seen.begin(), seen.end());
  return static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

int max_link_load(const Step& step, const RingTopology& topology) {
  return Occupancy(topology, step.transfers).max_load();
}

int group_wavelength_demand(int members) {
  if (members < 1) throw DomainError("group must have at least one member");
  return members / 2;  // == ceil((k-1)/2)
}

int a2a_wavelength_bound(int representatives) {
  if (representatives < 2)
    throw DomainError("all-to-all needs at least 2 participants");
  const long long r = representatives;
  return static_cast<int>((r * r + 7) / 8);
}

}  // namespace opticollect
