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

#include <algorithm>
#include <cmath>
#include <random>

#include "opticollect/analysis.hpp"
#include "opticollect/baselines.hpp"
#include "opticollect/error.hpp"
#include "opticollect/rwa.hpp"
#include "opticollect/wrht.hpp"

namespace oc = opticollect;

namespace {

const oc::CostModel kResNet(40e9, 25e-6, 8e8);

oc::Schedule assigned(oc::Schedule s, int w) {
  const oc::RingTopology ring(s.n_nodes, w);
  return oc::assign_schedule(std::move(s), ring);
}

}  // namespace

TEST(CostModel, Validation) {
  EXPECT_THROW(oc::CostModel(0, 1, 1), oc::DomainError);
  EXPECT_THROW(oc::CostModel(1, -1, 1), oc::DomainError);
  EXPECT_THROW(oc::CostModel(1, 0, 0), oc::DomainError);
  auto m = oc::CostModel::from(oc::RingTopology(8, 4),
                               *oc::find_workload("GoogLeNet"));
  EXPECT_DOUBLE_EQ(m.payload_bits(), 2.175264e8);
  EXPECT_EQ(m.bandwidth_per_wavelength(), 40e9);
  EXPECT_EQ(m.step_overhead(), 25e-6);
}

TEST(CommTime, Examples) {
  EXPECT_NEAR(oc::comm_time(4, kResNet), 0.0801, 1e-15);
  EXPECT_DOUBLE_EQ(oc::comm_time(1, oc::CostModel(5.0, 0.0, 5.0)), 1.0);
  EXPECT_DOUBLE_EQ(oc::comm_time(3, kResNet), 3 * (8e8 / 40e9 + 25e-6));
  EXPECT_THROW(oc::comm_time(0, kResNet), oc::DomainError);
}

TEST(CommTime, PropertyStrictlyMonotone) {
  for (int th = 1; th < 50; ++th) {
    EXPECT_LT(oc::comm_time(th, kResNet), oc::comm_time(th + 1, kResNet));
    EXPECT_LT(oc::comm_time(th, oc::CostModel(40e9, 25e-6, 1e8)),
              oc::comm_time(th, oc::CostModel(40e9, 25e-6, 2e8)));
    EXPECT_LT(oc::comm_time(th, oc::CostModel(40e9, 1e-6, 1e8)),
              oc::comm_time(th, oc::CostModel(40e9, 2e-6, 1e8)));
  }
}

TEST(SimulateTime, WrhtMatchesClosedForm) {
  auto s = assigned(oc::build_wrht(1000, 64, false).schedule, 64);
  auto r = oc::simulate_time(s, kResNet, 64);
  EXPECT_EQ(r.steps, 4);
  EXPECT_EQ(r.per_step_times.size(), 4u);
  EXPECT_NEAR(r.total_time, oc::comm_time(4, kResNet), 1e-15);
  EXPECT_EQ(r.lower_bound_steps, 4);
  EXPECT_DOUBLE_EQ(r.lower_bound_time, 0.0801);
}

TEST(SimulateTime, RingUsesChunkPayload) {
  auto s = assigned(oc::build_ring(4, 4e8), 1);
  auto r = oc::simulate_time(s, oc::CostModel(4e10, 2.5e-5, 4e8));
  EXPECT_EQ(r.steps, 6);
  EXPECT_NEAR(r.total_time, 0.01515, 1e-15);
}

TEST(SimulateTime, RescalesUnitPayload) {
  auto s = assigned(oc::build_bt(15), 1);
  auto r = oc::simulate_time(s, kResNet);
  EXPECT_NEAR(r.total_time, oc::comm_time(8, kResNet), 1e-15);
}

TEST(SimulateTime, RequiresWavelengths) {
  EXPECT_THROW(oc::simulate_time(oc::build_bt(15), kResNet),
               oc::IncompleteAssignment);
}

TEST(SimulateTime, PropertySumOfSteps) {
  auto s = assigned(oc::build_hring(64, 8, 4), 4);
  auto r = oc::simulate_time(s, kResNet);
  double sum = 0;
  for (double t : r.per_step_times) sum += t;
  EXPECT_DOUBLE_EQ(r.total_time, sum);
  EXPECT_EQ(static_cast<std::size_t>(r.steps), r.per_step_times.size());
}

TEST(LowerBound, Examples) {
  EXPECT_EQ(oc::lower_bound_steps(1000, 64), 4);
  EXPECT_EQ(oc::lower_bound_steps(15, 2), 4);
  EXPECT_EQ(oc::lower_bound_steps(3, 1), 2);
  EXPECT_NEAR(oc::lower_bound_time(1000, 64, kResNet), 0.0801, 1e-15);
  EXPECT_DOUBLE_EQ(oc::lower_bound_time(2, 1, oc::CostModel(7.0, 0.0, 7.0)), 2.0);
}

TEST(LowerBound, PropertyMatchesCommTime) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> nd(2, 4096), wd(1, 64);
  for (int i = 0; i < 50; ++i) {
    const int n = nd(rng), w = wd(rng);
    EXPECT_EQ(oc::lower_bound_time(n, w, kResNet),
              oc::comm_time(oc::lower_bound_steps(n, w), kResNet));
  }
}

TEST(LowerBound, PropertyMonotone) {
  for (int n = 2; n <= 4096; ++n) {
    for (int w = 1; w <= 64; ++w) {
      const int lb = oc::lower_bound_steps(n, w);
      ASSERT_EQ(lb, oc::wrht_step_count(n, w, false)) << n << " " << w;
      if (w > 1) ASSERT_LE(lb, oc::lower_bound_steps(n, w - 1));
      if (n > 2) ASSERT_GE(lb, oc::lower_bound_steps(n - 1, w));
    }
  }
}

TEST(ElectricalTime, RecursiveDoublingStep) {
  auto s = oc::build_rd(8, 8e8);
  auto r = oc::electrical_time(s, oc::FatTreeParams{});
  ASSERT_EQ(r.per_step_times.size(), 3u);
  for (double t : r.per_step_times) EXPECT_NEAR(t, 0.0322, 1e-15);
  EXPECT_FALSE(r.wavelengths_ignored);
}

TEST(ElectricalTime, RejectsOpticalOnlyAndFlagsWavelengths) {
  EXPECT_THROW(oc::electrical_time(oc::build_bt(8), oc::FatTreeParams{}),
               oc::DomainError);
  auto ring = assigned(oc::build_ring(8, 8e8), 1);
  auto r = oc::electrical_time(ring, oc::FatTreeParams{});
  EXPECT_TRUE(r.wavelengths_ignored);
  EXPECT_NEAR(r.total_time, 14 * (2e-4 + 1e8 / 25e9), 1e-12);
}

TEST(ElectricalTime, ERingSlowerThanORing) {
  auto d = 8e8;
  auto ering = oc::electrical_time(oc::build_ring(128, d), oc::FatTreeParams{});
  auto oring = oc::simulate_time(assigned(oc::build_ring(128, d), 64),
                                 oc::CostModel(40e9, 25e-6, d));
  EXPECT_GT(ering.total_time, oring.total_time);
}

TEST(Verify, GeneratedSchedulesPass) {
  EXPECT_TRUE(oc::verify_allreduce(oc::build_wrht(15, 2).schedule).pass);
  EXPECT_TRUE(oc::verify_allreduce(oc::build_ring(4)).pass);
  EXPECT_TRUE(oc::verify_allreduce(oc::build_bt(15)).pass);
  EXPECT_TRUE(oc::verify_allreduce(oc::build_rd(8)).pass);
  EXPECT_TRUE(oc::verify_allreduce(oc::build_hring(8, 2, 64)).pass);
}

TEST(Verify, BroadcastDeletedFails) {
  auto s = oc::build_wrht(15, 2).schedule;
  s.steps.pop_back();
  s.reindex();
  auto v = oc::verify_allreduce(s);
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.node.has_value());
  EXPECT_NE(*v.node, 2);
  EXPECT_NE(*v.node, 7);
  EXPECT_NE(*v.node, 12);
  EXPECT_TRUE(v.missing.has_value());
  EXPECT_FALSE(v.message.empty());
}

TEST(Verify, PropertyReduceOnlyFails) {
  for (int n = 3; n <= 200; ++n) {
    for (int w : {1, 2, 64}) {
      auto s = oc::build_wrht(n, w, false).schedule;
      std::erase_if(s.steps, [](const oc::Step& st) {
        return st.stage == oc::Stage::kBroadcast;
      });
      s.reindex();
      EXPECT_FALSE(oc::verify_allreduce(s).pass) << n << " " << w;
    }
  }
}

TEST(Verify, DroppedRingTransferFails) {
  auto s = oc::build_ring(6);
  s.steps[2].transfers.erase(s.steps[2].transfers.begin() + 3);
  auto v = oc::verify_allreduce(s);
  EXPECT_FALSE(v.pass);
  EXPECT_TRUE(v.chunk.has_value());
}

// 2048 lanes spill over several memory batches; the report must still name
// the lowest failing node, not the first one found.
TEST(Verify, ReportsLowestNodeAcrossBatches) {
  const int n = 2048;
  auto s = oc::build_ring(n);
  auto drop = [&](int step, int src) {
    auto& ts = s.steps[static_cast<std::size_t>(step)].transfers;
    auto it = std::find_if(ts.begin(), ts.end(),
                           [src](const oc::Transfer& t) { return t.src == src; });
    ASSERT_NE(it, ts.end());
    ts.erase(it);
  };
  drop(n - 1 + 53, 4);     // lane 2000 never reaches node 5 onward
  drop(2 * n - 3, 99);     // lane 102 never reaches node 100
  auto v = oc::verify_allreduce(s);
  ASSERT_FALSE(v.pass);
  EXPECT_EQ(v.node, 5);
  EXPECT_EQ(v.chunk, 2000);
}

TEST(Verify, OutOfRangeNode) {
  auto s = oc::build_bt(4);
  s.steps[0].transfers[0].dst = 9;
  EXPECT_THROW(oc::verify_allreduce(s), oc::DomainError);
}
