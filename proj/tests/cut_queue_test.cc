// Copyright 2026 The dpmst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "dpmst/cut_queue.h"
#include "dpmst/error.h"
#include "dpmst/graph.h"
#include "queue_fuzz.h"

namespace dpmst {

struct CutQueueTestPeer {
  static void CorruptLayer(CutQueue& q) { q.levels_.back()[0] += 1; }
  static void CorruptPosition(CutQueue& q) { std::swap(q.position_[0], q.position_[1]); }
  static void CorruptPrefix(CutQueue& q, EdgeId e) { q.active_[e] = 0; }
};

namespace {

Graph Triangle() { return Graph::Create(3, {{0, 1}, {1, 2}, {0, 2}}); }

template <typename F>
void ExpectCode(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(CutQueueTest, BuildsNegatedSingletonGroups) {
  const Graph g = Triangle();
  const auto w = WeightAssignment::Create(g, {1, 2, 3}, 1.0);
  const CutQueue q = CutQueue::Build(g, w, 1.0, true);
  EXPECT_EQ(q.group_count(), 3u);
  EXPECT_EQ(q.KeyOf(0), -1);
  EXPECT_EQ(q.KeyOf(1), -2);
  EXPECT_EQ(q.KeyOf(2), -3);
  EXPECT_EQ(q.active_count(), 0);
  EXPECT_FALSE(q.MaxActiveGroup().has_value());
  EXPECT_TRUE(q.Audit());
}

TEST(CutQueueTest, BuildsSharedGroups) {
  const Graph g = Triangle();
  const auto w = WeightAssignment::Create(g, {1.0, 1.0, 2.0}, 1.0);
  CutQueue q = CutQueue::Build(g, w, 1.0, false);
  ASSERT_EQ(q.group_count(), 2u);
  EXPECT_EQ(q.group_key_at(0), 2);
  EXPECT_EQ(q.group_key_at(1), 1);
  for (EdgeId e = 0; e < 3; ++e) q.Insert(e);
  EXPECT_EQ(q.GroupActiveCount(2), 1);
  EXPECT_EQ(q.GroupActiveCount(1), 2);
  ExpectCode(ErrorCode::kUnknownGroup, [&] { q.GroupActiveCount(7); });
  EXPECT_TRUE(q.Audit());
}

TEST(CutQueueTest, RejectsBadConfiguration) {
  const Graph g = Triangle();
  const auto w = WeightAssignment::Create(g, {1, 2, 3}, 1.0);
  ExpectCode(ErrorCode::kInvalidParam, [&] { CutQueue::Build(g, w, 0.0, true); });
  ExpectCode(ErrorCode::kInvalidParam,
             [&] { CutQueue::Build(g, w, 1.0, true, CutQueue::Options{0}); });
  ExpectCode(ErrorCode::kInvalidParam,
             [&] { CutQueue::Build(g, w, 1.0, true, CutQueue::Options{5}); });
}

TEST(CutQueueTest, InsertRemoveAndMax) {
  const GeneratedGraph gg = GenerateCompleteGraph(6, 3, WeightDistribution::kUniform01);
  CutQueue q = CutQueue::Build(gg.graph, gg.weights, 0.1, false);
  q.Insert(4);
  EXPECT_TRUE(q.Audit());
  ASSERT_TRUE(q.MaxActiveGroup().has_value());
  EXPECT_EQ(q.MaxActiveGroup()->key, q.KeyOf(4));
  EXPECT_EQ(q.SelectActiveByRank(q.KeyOf(4), 0), 4u);
  ExpectCode(ErrorCode::kAlreadyActive, [&] { q.Insert(4); });
  ExpectCode(ErrorCode::kUnknownEdge, [&] { q.Insert(99); });
  q.Remove(4);
  EXPECT_TRUE(q.Audit());
  EXPECT_EQ(q.active_count(), 0);
  ExpectCode(ErrorCode::kNotActive, [&] { q.Remove(4); });
  ExpectCode(ErrorCode::kUnknownEdge, [&] { q.Remove(99); });
}

TEST(CutQueueTest, RemovingTheMaxFallsToNextGroup) {
  const Graph g = Graph::Create(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto w = WeightAssignment::Create(g, {5.5, 2.2, 2.7}, 1.0);
  CutQueue q = CutQueue::Build(g, w, 1.0, false);
  for (EdgeId e = 0; e < 3; ++e) q.Insert(e);
  EXPECT_EQ(q.MaxActiveGroup()->key, 5);
  q.Remove(0);
  EXPECT_EQ(q.MaxActiveGroup()->key, 2);
  EXPECT_EQ(q.MaxActiveGroup()->active, 2);
  EXPECT_EQ(q.ActiveRangeCount(2, 2), 2);
  EXPECT_EQ(q.ActiveRangeCount(3, 2), 0);
  EXPECT_EQ(q.ActiveRangeCount(INT64_MIN, INT64_MAX), 2);
}

TEST(CutQueueTest, GroupMemberEnumeration) {
  const Graph g = Graph::Create(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const auto w = WeightAssignment::Create(g, {1.1, 1.2, 1.3, 1.4, 1.5}, 1.0);
  CutQueue q = CutQueue::Build(g, w, 1.0, false);
  q.Insert(1);
  q.Insert(3);
  q.Insert(4);
  EXPECT_EQ(q.GroupActiveCount(1), 3);
  std::set<EdgeId> got;
  for (int i = 0; i < 3; ++i) got.insert(q.GroupActiveMember(1, i));
  EXPECT_EQ(got, (std::set<EdgeId>{1, 3, 4}));
  ExpectCode(ErrorCode::kRankOutOfRange, [&] { q.GroupActiveMember(1, 3); });
  std::set<EdgeId> ranked;
  for (int r = 0; r < 3; ++r) ranked.insert(q.SelectActiveByRank(1, r));
  EXPECT_EQ(ranked, got);
  ExpectCode(ErrorCode::kRankOutOfRange, [&] { q.SelectActiveByRank(1, 3); });
  ExpectCode(ErrorCode::kRankOutOfRange, [&] { q.SelectActiveByRank(1, -1); });
}

TEST(CutQueueTest, AuditDetectsCorruption) {
  const GeneratedGraph gg = GenerateCompleteGraph(8, 1, WeightDistribution::kUniform01);
  CutQueue base = CutQueue::Build(gg.graph, gg.weights, 0.05, true);
  for (EdgeId e = 0; e < 10; ++e) base.Insert(e);
  ASSERT_TRUE(base.Audit());
  CutQueue a = base, b = base, c = base;
  CutQueueTestPeer::CorruptLayer(a);
  CutQueueTestPeer::CorruptPosition(b);
  CutQueueTestPeer::CorruptPrefix(c, 3);
  EXPECT_FALSE(a.Audit());
  EXPECT_FALSE(b.Audit());
  EXPECT_FALSE(c.Audit());
  EXPECT_TRUE(base.Audit());
}

TEST(CutQueueTest, BlockSizeIsSmallestCoveringRoot) {
  const GeneratedGraph gg = GenerateCompleteGraph(40, 2, WeightDistribution::kUniform01);
  for (int layers = 1; layers <= 4; ++layers) {
    const CutQueue q = CutQueue::Build(gg.graph, gg.weights, 1e-6, false,
                                       CutQueue::Options{layers});
    const auto g = static_cast<double>(q.group_count());
    const auto b = static_cast<double>(q.block_size());
    EXPECT_GE(std::pow(b, layers), g);
    EXPECT_LT(std::pow(b - 1, layers), g);
    EXPECT_EQ(q.layers(), layers);
  }
}

TEST(CutQueueTest, FuzzAgainstModel) {
  for (int layers : {1, 2, 4}) {
    const testing::FuzzReport r = testing::RunQueueFuzz(100 + layers, 10'000, 64, layers);
    EXPECT_EQ(r.mismatches, 0) << r.first_mismatch;
    EXPECT_EQ(r.audit_failures, 0);
    EXPECT_LE(r.max_update_work, 1 + layers);
  }
}

TEST(CutQueueTest, FourLayerComparisonCeilings) {
  const testing::FuzzReport r = testing::RunQueueFuzz(7, 20'000, 64, 4);
  EXPECT_EQ(r.mismatches, 0) << r.first_mismatch;
  EXPECT_LE(r.lookup_ratio, 8.0);
  EXPECT_LE(r.rank_ratio, 8.0);
}

TEST(CutQueueTest, LookupCostStaysFlatOnLargeQueue) {
  // g ~ 5e5 groups: four layers need at most 4 * ceil(g^{1/4}) inspections.
  const GeneratedGraph gg = GenerateCompleteGraph(1000, 4, WeightDistribution::kUniform01);
  CutQueue q = CutQueue::Build(gg.graph, gg.weights, 1e-9, true);
  const double bound = 4.0 * static_cast<double>(q.block_size());
  q.Insert(static_cast<EdgeId>(gg.graph.edge_count() - 1));
  q.ResetStats();
  EXPECT_TRUE(q.MaxActiveGroup().has_value());
  EXPECT_LE(static_cast<double>(q.stats().max_lookup_comparisons), bound);
  q.SelectActiveByRank(INT64_MAX, 0);
  EXPECT_LE(static_cast<double>(q.stats().max_rank_comparisons), 2.0 * bound);
}

}  // namespace
}  // namespace dpmst
