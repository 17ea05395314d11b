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
#include <gtest/gtest.h>

#include <numeric>

#include "opticollect/baselines.hpp"
#include "opticollect/error.hpp"
#include "opticollect/rwa.hpp"
#include "opticollect/wrht.hpp"
#include "oracles.hpp"

namespace oc = opticollect;
using oc::Direction;

namespace {

oc::Transfer arc(int src, int dst, Direction d,
                 std::optional<std::int16_t> wl = std::nullopt) {
  oc::Transfer t;
  t.payload_bits = 1.0;
  t.src = src;
  t.dst = dst;
  t.direction = d;
  t.wavelength = wl;
  return t;
}

oc::Step make_step(std::vector<oc::Transfer> ts) {
  oc::Step s;
  s.transfers = std::move(ts);
  return s;
}

void expect_clean(const oc::Schedule& s, const oc::RingTopology& ring) {
  for (const auto& st : s.steps) {
    EXPECT_TRUE(oc::conflict_check(st, ring).empty())
        << oc::to_string(s.algorithm) << " step " << st.index;
    EXPECT_EQ(oracle::brute_conflicts(s.n_nodes, st), 0);
    for (const auto& t : st.transfers) {
      ASSERT_TRUE(t.wavelength.has_value());
      EXPECT_LT(*t.wavelength, ring.n_wavelengths());
      EXPECT_GE(*t.wavelength, 0);
    }
  }
}

}  // namespace

TEST(FirstFit, SingleTransfer) {
  oc::RingTopology ring(8, 1);
  auto out = oc::assign_first_fit(make_step({arc(1, 4, Direction::kClockwise)}),
                                  ring);
  ASSERT_EQ(out.transfers.size(), 1u);
  EXPECT_EQ(out.transfers[0].wavelength, 0);
}

TEST(FirstFit, PigeonholeExhausts) {
  oc::RingTopology ring(8, 1);
  auto step = make_step({arc(0, 3, Direction::kClockwise),
                         arc(2, 4, Direction::kClockwise)});
  step.index = 5;
  try {
    oc::assign_first_fit(step, ring);
    FAIL() << "expected WavelengthExhausted";
  } catch (const oc::WavelengthExhausted& e) {
    EXPECT_EQ(e.needed(), 2);
    EXPECT_EQ(e.link_load(), 2);
    EXPECT_EQ(e.step_index(), 5);
    EXPECT_EQ(e.transfer().src, 2);
  }
  EXPECT_THROW(oc::assign_wavelengths(step, ring), oc::WavelengthExhausted);
}

TEST(FirstFit, OppositeDirectionsAndFibersShareIndex) {
  oc::RingTopology ring(8, 1);
  auto ccw = arc(3, 0, Direction::kCounterClockwise);
  auto other_fiber = arc(1, 3, Direction::kClockwise);
  other_fiber.fiber = 1;
  auto out = oc::assign_first_fit(
      make_step({arc(0, 3, Direction::kClockwise), ccw, other_fiber}), ring);
  for (const auto& t : out.transfers) EXPECT_EQ(t.wavelength, 0);
}

TEST(FirstFit, RejectsPreassigned) {
  oc::RingTopology ring(8, 2);
  EXPECT_THROW(
      oc::assign_first_fit(make_step({arc(0, 1, Direction::kClockwise, 0)}), ring),
      oc::DomainError);
}

TEST(FirstFit, SortedBySrcDst) {
  oc::RingTopology ring(8, 4);
  auto out = oc::assign_first_fit(
      make_step({arc(5, 6, Direction::kClockwise), arc(1, 4, Direction::kClockwise),
                 arc(1, 2, Direction::kClockwise)}),
      ring);
  EXPECT_EQ(out.transfers[0].dst, 2);
  EXPECT_EQ(out.transfers[1].dst, 4);
  EXPECT_EQ(out.transfers[2].src, 5);
  EXPECT_EQ(out.transfers[0].wavelength, 0);
  EXPECT_EQ(out.transfers[1].wavelength, 1);
  EXPECT_EQ(out.transfers[2].wavelength, 0);
}

TEST(ConflictCheck, Examples) {
  oc::RingTopology ring(8, 2);
  auto clash = make_step({arc(1, 4, Direction::kClockwise, 0),
                          arc(2, 3, Direction::kClockwise, 0)});
  auto c = oc::conflict_check(clash, ring);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].first, 0u);
  EXPECT_EQ(c[0].second, 1u);
  EXPECT_EQ(c[0].segment, (oc::LinkSegment{2, 3, Direction::kClockwise, 0}));
  EXPECT_EQ(c[0].wavelength, 0);

  auto disjoint = make_step({arc(0, 2, Direction::kClockwise, 0),
                             arc(2, 5, Direction::kClockwise, 0)});
  EXPECT_TRUE(oc::conflict_check(disjoint, ring).empty());

  auto split = make_step({arc(1, 4, Direction::kClockwise, 0),
                          arc(2, 3, Direction::kClockwise, 1)});
  EXPECT_TRUE(oc::conflict_check(split, ring).empty());

  auto missing = make_step({arc(0, 2, Direction::kClockwise)});
  EXPECT_THROW(oc::conflict_check(missing, ring), oc::IncompleteAssignment);
}

TEST(Demand, Formulas) {
  EXPECT_EQ(oc::group_wavelength_demand(5), 2);
  EXPECT_EQ(oc::group_wavelength_demand(129), 64);
  EXPECT_EQ(oc::group_wavelength_demand(1), 0);
  EXPECT_EQ(oc::group_wavelength_demand(4), 2);
  EXPECT_EQ(oc::a2a_wavelength_bound(3), 2);
  EXPECT_EQ(oc::a2a_wavelength_bound(8), 8);
  EXPECT_EQ(oc::a2a_wavelength_bound(2), 1);
  EXPECT_THROW(oc::a2a_wavelength_bound(1), oc::DomainError);
}

// First-fit on one collecting group uses exactly ceil((k-1)/2) wavelengths.
TEST(Demand, PropertyGroupCollectMatchesFirstFit) {
  for (int k = 1; k <= 257; ++k) {
    const int n = k + 3;
    oc::RingTopology ring(n, 200);
    std::vector<oc::NodeId> members(static_cast<std::size_t>(k));
    std::iota(members.begin(), members.end(), 2);
    auto group = oc::partition_level(members, k + 1).front();
    auto step = make_step(oc::collect_transfers(group, 1.0));
    const int want = (k - 1 + 1) / 2;
    if (step.transfers.empty()) {
      EXPECT_EQ(oc::group_wavelength_demand(k), 0);
      continue;
    }
    auto out = oc::assign_first_fit(step, ring);
    EXPECT_EQ(oc::wavelengths_used(out), want) << k;
    EXPECT_EQ(oc::group_wavelength_demand(k), want) << k;
    EXPECT_EQ(oracle::brute_max_load(n, out), want) << k;
  }
}

// r representatives spaced s apart on an r*s ring.
TEST(Demand, PropertyAllToAllWithinBound) {
  for (int r = 2; r <= 24; ++r) {
    for (int s : {1, 3, 7}) {
      const int n = r * s;
      if (n < 2) continue;
      oc::RingTopology ring(n, 200);
      std::vector<oc::NodeId> reps;
      for (int i = 0; i < r; ++i) reps.push_back(i * s);
      auto step = make_step(oc::all_to_all_transfers(reps, 1.0));
      ASSERT_EQ(static_cast<int>(step.transfers.size()), r * (r - 1));
      auto out = oc::assign_wavelengths(step, ring);
      EXPECT_TRUE(oc::conflict_check(out, ring).empty());
      EXPECT_LE(oc::wavelengths_used(out), oc::a2a_wavelength_bound(r))
          << r << " " << s;
      EXPECT_LE(oracle::brute_max_load(n, step), oc::a2a_wavelength_bound(r));
      for (const auto& t : step.transfers) {
        const int hops = ring.distance(t.src, t.dst, t.direction);
        EXPECT_LE(hops, n / 2) << "not a shorter arc";
      }
    }
  }
}

TEST(Schedules, FifteenNodeWavelengthUse) {
  oc::RingTopology ring(15, 2);
  auto s = oc::assign_schedule(oc::build_wrht(15, 2).schedule, ring);
  expect_clean(s, ring);
  std::vector<int> used;
  for (const auto& st : s.steps) used.push_back(oc::wavelengths_used(st));
  EXPECT_EQ(used, (std::vector<int>{2, 1, 2}));
  // Same index live on both directions in the collect step.
  bool reuse = false;
  for (const auto& a : s.steps[0].transfers)
    for (const auto& b : s.steps[0].transfers)
      reuse |= a.direction != b.direction && a.wavelength == b.wavelength;
  EXPECT_TRUE(reuse);

  auto bt = oc::assign_schedule(oc::build_bt(15), ring);
  for (const auto& st : bt.steps) EXPECT_EQ(oc::wavelengths_used(st), 1);
}

TEST(Schedules, PropertyGeneratorMatrixConflictFree) {
  for (int n = 2; n <= 128; ++n) {
    for (int w : {1, 2, 4, 8, 16, 32, 64}) {
      oc::RingTopology ring(n, w);
      for (bool allow : {true, false}) {
        auto b = oc::build_wrht(n, w, allow);
        auto s = oc::assign_schedule(b.schedule, ring);
        expect_clean(s, ring);
        for (std::size_t i = 0; i < b.plan.levels.size(); ++i) {
          int need = 0;
          for (const auto& g : b.plan.levels[i])
            need = std::max(need, oc::group_wavelength_demand(
                                      static_cast<int>(g.members.size())));
          if (need > 0)
            EXPECT_EQ(oc::wavelengths_used(s.steps[i]), need) << n << " " << w;
        }
      }
    }
    oc::RingTopology one(n, 1);
    expect_clean(oc::assign_schedule(oc::build_ring(n), one), one);
    expect_clean(oc::assign_schedule(oc::build_bt(n), one), one);
    for (int g : {2, 4, 8}) {
      if (n % g != 0 || n / g < 2) continue;
      for (int w : {1, 2, 64}) {
        oc::RingTopology ring(n, w);
        expect_clean(oc::assign_schedule(oc::build_hring(n, g, w), ring), ring);
      }
    }
  }
}

TEST(Schedules, MaxLinkLoadMatchesOracle) {
  auto s = oc::build_wrht(200, 3).schedule;
  oc::RingTopology ring(200, 3);
  for (const auto& st : s.steps)
    EXPECT_EQ(oc::max_link_load(st, ring), oracle::brute_max_load(200, st));
}
