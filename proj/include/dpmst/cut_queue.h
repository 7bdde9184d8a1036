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

#ifndef DPMST_CUT_QUEUE_H_
#define DPMST_CUT_QUEUE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dpmst/graph.h"

namespace dpmst {

struct CutQueueStats {
  std::int64_t lookups = 0;
  std::int64_t lookup_comparisons = 0;      // summed over all queries
  std::int64_t last_lookup_comparisons = 0;
  std::int64_t max_lookup_comparisons = 0;   // maximum-group lookups
  std::int64_t max_rank_comparisons = 0;     // range counts and selections
  std::int64_t swaps = 0;
  std::int64_t counter_updates = 0;
  std::int64_t last_update_work = 0;        // swaps + counter updates
};

// Priority structure over discretized edge scores.
//
// All m edges sit in one array sorted by descending group key (ties by edge
// id). Each group owns an interval of that array whose active edges are
// packed to the left, so insert and remove are a single swap plus a counter
// bump per layer. Active counts are aggregated over `layers` levels with
// block size ceil(g^(1/layers)) over the g occurring groups, which bounds the
// maximum lookup, range counts and rank selection by layers * block_size
// child inspections.
//
// Single writer. The const queries update instrumentation counters, so a
// shared instance must not be queried concurrently.
class CutQueue {
 public:
  struct Options {
    int layers = 4;  // 1 to 4; 2 is the classic sqrt decomposition
  };

  // All edges start inactive. Keys are Discretize(+/-w, step). Uses a
  // counting sort when the key range is at most 4m, else a comparison sort.
  static CutQueue Build(const Graph& graph, const WeightAssignment& weights,
                        double step, bool negate, Options options);
  static CutQueue Build(const Graph& graph, const WeightAssignment& weights,
                        double step, bool negate) {
    return Build(graph, weights, step, negate, Options{});
  }

  // Throws UnknownEdge, AlreadyActive.
  void Insert(EdgeId e);
  // Throws UnknownEdge, NotActive.
  void Remove(EdgeId e);
  bool IsActive(EdgeId e) const;

  struct GroupSummary {
    std::int64_t key;
    std::int64_t active;
  };
  // Largest key with an active edge; nullopt when nothing is active.
  std::optional<GroupSummary> MaxActiveGroup() const;

  // Active edges with key in [key_lo, key_hi].
  std::int64_t ActiveRangeCount(std::int64_t key_lo, std::int64_t key_hi) const;

  // The rank-th active edge, in structure order, among groups with key <=
  // key_hi. Throws RankOutOfRange.
  EdgeId SelectActiveByRank(std::int64_t key_hi, std::int64_t rank) const;

  // Throws UnknownGroup if no edge has this key.
  std::int64_t GroupActiveCount(std::int64_t key) const;
  // i-th active member of the group, 0 <= i < GroupActiveCount(key). Throws
  // UnknownGroup, RankOutOfRange.
  EdgeId GroupActiveMember(std::int64_t key, std::int64_t i) const;

  // Recomputes every structural invariant from scratch.
  bool Audit() const;

  std::int64_t active_count() const { return active_total_; }
  std::size_t edge_count() const { return position_.size(); }
  std::size_t group_count() const { return groups_.size(); }
  std::int64_t block_size() const { return block_; }
  int layers() const { return static_cast<int>(levels_.size()); }
  double step() const { return step_; }
  std::int64_t KeyOf(EdgeId e) const { return groups_[group_of_[e]].key; }
  double ScoreOf(EdgeId e) const { return scores_[e]; }

  const CutQueueStats& stats() const { return stats_; }
  void ResetStats() { stats_ = {}; }

  // Index-based view (index 0 is the largest key) for FastNoisyMaxOver.
  std::int64_t group_key_at(std::size_t gi) const { return groups_[gi].key; }
  std::int64_t active_in_group_at(std::size_t gi) const {
    return groups_[gi].active;
  }
  EdgeId active_member_at(std::size_t gi, std::int64_t i) const {
    return slots_[groups_[gi].begin + static_cast<std::size_t>(i)];
  }
  std::optional<std::size_t> max_active_group_index() const;
  std::int64_t active_count_from(std::size_t gi) const {
    return active_total_ - PrefixActive(gi);
  }
  struct ActiveRef {
    std::size_t group;
    EdgeId edge;
  };
  ActiveRef select_active_from(std::size_t gi, std::int64_t rank) const;

 private:
  friend struct CutQueueTestPeer;

  struct Group {
    std::int64_t key;
    std::size_t begin;
    std::size_t end;
    std::int64_t active;
  };

  CutQueue() = default;

  void Bump(std::size_t group, std::int64_t delta);
  // Active edges in groups [0, gi).
  std::int64_t PrefixActive(std::size_t gi) const;
  // Group holding the global active rank; `rank` becomes the offset inside it.
  std::size_t DescendToRank(std::int64_t& rank) const;
  // Index of the first group with key <= key (group_count() if none).
  std::size_t FirstGroupAtOrBelow(std::int64_t key) const;
  std::size_t GroupIndexOf(std::int64_t key) const;
  void Record(std::int64_t comparisons, bool max_lookup) const;

  double step_ = 1.0;
  std::vector<double> scores_;        // signed raw score per edge
  std::vector<EdgeId> slots_;         // sorted edge array
  std::vector<std::size_t> position_; // edge -> slot
  std::vector<std::uint32_t> group_of_;
  std::vector<char> active_;
  std::vector<Group> groups_;
  std::unordered_map<std::int64_t, std::size_t> group_index_;
  // levels_[0][i] = groups_[i].active; levels_[l][j] sums block j of level
  // l - 1. The last level has at most block_ entries.
  std::vector<std::vector<std::int64_t>> levels_;
  std::int64_t block_ = 1;
  std::int64_t active_total_ = 0;
  mutable CutQueueStats stats_;
};

}  // namespace dpmst

#endif  // DPMST_CUT_QUEUE_H_
