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

#include "dpmst/cut_queue.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "dpmst/error.h"
#include "dpmst/rnm.h"

namespace dpmst {
namespace {

std::int64_t IntPow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / std::max<std::int64_t>(base, 1)) {
      return std::numeric_limits<std::int64_t>::max();
    }
    r *= base;
  }
  return r;
}

// Smallest b >= 1 with b^layers >= g.
std::int64_t BlockSizeFor(std::size_t g, int layers) {
  if (g <= 1) return 1;
  const auto target = static_cast<std::int64_t>(g);
  auto b = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(g), 1.0 / layers)));
  b = std::max<std::int64_t>(b, 1);
  while (IntPow(b, layers) < target) ++b;
  while (b > 1 && IntPow(b - 1, layers) >= target) --b;
  return b;
}

}  // namespace

CutQueue CutQueue::Build(const Graph& graph, const WeightAssignment& weights,
                         double step, bool negate, Options options) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidParam, "step must be finite and positive");
  }
  if (options.layers < 1 || options.layers > 4) {
    throw Error(ErrorCode::kInvalidParam, "layers must be in [1, 4]");
  }
  if (weights.size() != graph.edge_count()) {
    throw Error(ErrorCode::kInvalidParam, "weights do not match graph");
  }
  const std::size_t m = graph.edge_count();

  CutQueue q;
  q.step_ = step;
  q.scores_.resize(m);
  std::vector<std::int64_t> keys(m);
  for (EdgeId e = 0; e < m; ++e) {
    q.scores_[e] = negate ? -weights.weight(e) : weights.weight(e);
    keys[e] = Discretize(q.scores_[e], step);
  }

  q.slots_.resize(m);
  if (m > 0) {
    const auto [lo, hi] = std::minmax_element(keys.begin(), keys.end());
    const auto min_key = *lo;
    const auto range = static_cast<std::uint64_t>(*hi - *lo) + 1;
    if (range <= 4 * static_cast<std::uint64_t>(m)) {
      // Counting sort, descending key; ids ascend within a bucket.
      std::vector<std::size_t> start(range + 1, 0);
      for (std::int64_t k : keys) {
        ++start[range - 1 - static_cast<std::uint64_t>(k - min_key) + 1];
      }
      std::partial_sum(start.begin(), start.end(), start.begin());
      for (EdgeId e = 0; e < m; ++e) {
        const auto bucket = range - 1 - static_cast<std::uint64_t>(keys[e] - min_key);
        q.slots_[start[bucket]++] = e;
      }
    } else {
      std::iota(q.slots_.begin(), q.slots_.end(), EdgeId{0});
      std::sort(q.slots_.begin(), q.slots_.end(), [&](EdgeId a, EdgeId b) {
        return keys[a] != keys[b] ? keys[a] > keys[b] : a < b;
      });
    }
  }

  q.position_.resize(m);
  q.group_of_.resize(m);
  q.active_.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const EdgeId e = q.slots_[i];
    q.position_[e] = i;
    if (q.groups_.empty() || q.groups_.back().key != keys[e]) {
      q.groups_.push_back({keys[e], i, i, 0});
    }
    q.groups_.back().end = i + 1;
    q.group_of_[e] = static_cast<std::uint32_t>(q.groups_.size() - 1);
  }
  q.group_index_.reserve(q.groups_.size());
  for (std::size_t gi = 0; gi < q.groups_.size(); ++gi) {
    q.group_index_.emplace(q.groups_[gi].key, gi);
  }

  q.block_ = BlockSizeFor(q.groups_.size(), options.layers);
  std::size_t size = q.groups_.size();
  const auto b = static_cast<std::size_t>(q.block_);
  for (int l = 0; l < options.layers; ++l) {
    q.levels_.emplace_back(size, 0);
    size = (size + b - 1) / b;
  }
  return q;
}

bool CutQueue::IsActive(EdgeId e) const {
  if (e >= active_.size()) {
    throw Error(ErrorCode::kUnknownEdge, "edge id " + std::to_string(e));
  }
  return active_[e] != 0;
}

void CutQueue::Bump(std::size_t group, std::int64_t delta) {
  std::size_t idx = group;
  const auto b = static_cast<std::size_t>(block_);
  levels_[0][idx] += delta;
  for (std::size_t l = 1; l < levels_.size(); ++l) {
    idx /= b;
    levels_[l][idx] += delta;
  }
  stats_.counter_updates += static_cast<std::int64_t>(levels_.size());
}

void CutQueue::Insert(EdgeId e) {
  if (IsActive(e)) {
    throw Error(ErrorCode::kAlreadyActive, "edge id " + std::to_string(e));
  }
  const std::size_t gi = group_of_[e];
  Group& g = groups_[gi];
  const std::size_t target = g.begin + static_cast<std::size_t>(g.active);
  const std::size_t pos = position_[e];
  std::swap(slots_[pos], slots_[target]);
  position_[slots_[pos]] = pos;
  position_[e] = target;
  active_[e] = 1;
  ++g.active;
  ++active_total_;
  Bump(gi, +1);
  ++stats_.swaps;
  stats_.last_update_work = 1 + static_cast<std::int64_t>(levels_.size());
}

void CutQueue::Remove(EdgeId e) {
  if (!IsActive(e)) {
    throw Error(ErrorCode::kNotActive, "edge id " + std::to_string(e));
  }
  const std::size_t gi = group_of_[e];
  Group& g = groups_[gi];
  const std::size_t last = g.begin + static_cast<std::size_t>(g.active) - 1;
  const std::size_t pos = position_[e];
  std::swap(slots_[pos], slots_[last]);
  position_[slots_[pos]] = pos;
  position_[e] = last;
  active_[e] = 0;
  --g.active;
  --active_total_;
  Bump(gi, -1);
  ++stats_.swaps;
  stats_.last_update_work = 1 + static_cast<std::int64_t>(levels_.size());
}

void CutQueue::Record(std::int64_t comparisons, bool max_lookup) const {
  ++stats_.lookups;
  stats_.lookup_comparisons += comparisons;
  stats_.last_lookup_comparisons = comparisons;
  auto& ceiling =
      max_lookup ? stats_.max_lookup_comparisons : stats_.max_rank_comparisons;
  ceiling = std::max(ceiling, comparisons);
}

std::optional<std::size_t> CutQueue::max_active_group_index() const {
  if (groups_.empty()) {
    Record(0, true);
    return std::nullopt;
  }
  const auto b = static_cast<std::size_t>(block_);
  std::int64_t comparisons = 0;
  const std::size_t top = levels_.size() - 1;
  std::size_t j = 0;
  const auto& roots = levels_[top];
  while (j < roots.size()) {
    ++comparisons;
    if (roots[j] != 0) break;
    ++j;
  }
  if (j == roots.size()) {
    Record(comparisons, true);
    return std::nullopt;
  }
  for (std::size_t l = top; l > 0; --l) {
    const auto& below = levels_[l - 1];
    std::size_t child = j * b;
    const std::size_t end = std::min(child + b, below.size());
    while (child < end) {
      ++comparisons;
      if (below[child] != 0) break;
      ++child;
    }
    j = child;
  }
  Record(comparisons, true);
  return j;
}

std::optional<CutQueue::GroupSummary> CutQueue::MaxActiveGroup() const {
  const auto gi = max_active_group_index();
  if (!gi) return std::nullopt;
  return GroupSummary{groups_[*gi].key, groups_[*gi].active};
}

std::int64_t CutQueue::PrefixActive(std::size_t gi) const {
  const auto b = static_cast<std::size_t>(block_);
  std::int64_t total = 0;
  std::size_t idx = gi;
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const std::size_t start = l + 1 == levels_.size() ? 0 : (idx / b) * b;
    for (std::size_t i = start; i < idx; ++i) total += levels_[l][i];
    stats_.lookup_comparisons += static_cast<std::int64_t>(idx - start);
    idx /= b;
  }
  return total;
}

std::size_t CutQueue::DescendToRank(std::int64_t& rank) const {
  const auto b = static_cast<std::size_t>(block_);
  std::int64_t comparisons = 0;
  const std::size_t top = levels_.size() - 1;
  std::size_t j = 0;
  const auto& roots = levels_[top];
  while (j + 1 < roots.size()) {
    ++comparisons;
    if (rank < roots[j]) break;
    rank -= roots[j];
    ++j;
  }
  for (std::size_t l = top; l > 0; --l) {
    const auto& below = levels_[l - 1];
    std::size_t child = j * b;
    const std::size_t end = std::min(child + b, below.size());
    // The last child needs no test: the parent count covers the rank.
    while (child + 1 < end) {
      ++comparisons;
      if (rank < below[child]) break;
      rank -= below[child];
      ++child;
    }
    j = child;
  }
  stats_.lookup_comparisons += comparisons;
  return j;
}

std::size_t CutQueue::FirstGroupAtOrBelow(std::int64_t key) const {
  const auto it = std::partition_point(
      groups_.begin(), groups_.end(),
      [key](const Group& g) { return g.key > key; });
  return static_cast<std::size_t>(it - groups_.begin());
}

std::size_t CutQueue::GroupIndexOf(std::int64_t key) const {
  const auto it = group_index_.find(key);
  if (it == group_index_.end()) {
    throw Error(ErrorCode::kUnknownGroup, "group key " + std::to_string(key));
  }
  return it->second;
}

std::int64_t CutQueue::ActiveRangeCount(std::int64_t key_lo,
                                        std::int64_t key_hi) const {
  if (key_lo > key_hi) return 0;
  const std::int64_t before = stats_.lookup_comparisons;
  const std::size_t first = FirstGroupAtOrBelow(key_hi);
  const std::size_t last =
      key_lo == std::numeric_limits<std::int64_t>::min()
          ? groups_.size()
          : FirstGroupAtOrBelow(key_lo - 1);
  const std::int64_t count =
      first >= last ? 0 : PrefixActive(last) - PrefixActive(first);
  const std::int64_t used = stats_.lookup_comparisons - before;
  stats_.lookup_comparisons = before;
  Record(used, false);
  return count;
}

CutQueue::ActiveRef CutQueue::select_active_from(std::size_t gi,
                                                 std::int64_t rank) const {
  const std::int64_t before = stats_.lookup_comparisons;
  const std::int64_t offset = gi >= groups_.size() ? active_total_
                                                   : PrefixActive(gi);
  if (rank < 0 || rank >= active_total_ - offset) {
    stats_.lookup_comparisons = before;
    throw Error(ErrorCode::kRankOutOfRange, "rank " + std::to_string(rank));
  }
  std::int64_t global = offset + rank;
  const std::size_t g = DescendToRank(global);
  const std::int64_t used = stats_.lookup_comparisons - before;
  stats_.lookup_comparisons = before;
  Record(used, false);
  return {g, slots_[groups_[g].begin + static_cast<std::size_t>(global)]};
}

EdgeId CutQueue::SelectActiveByRank(std::int64_t key_hi,
                                    std::int64_t rank) const {
  return select_active_from(FirstGroupAtOrBelow(key_hi), rank).edge;
}

std::int64_t CutQueue::GroupActiveCount(std::int64_t key) const {
  return groups_[GroupIndexOf(key)].active;
}

EdgeId CutQueue::GroupActiveMember(std::int64_t key, std::int64_t i) const {
  const Group& g = groups_[GroupIndexOf(key)];
  if (i < 0 || i >= g.active) {
    throw Error(ErrorCode::kRankOutOfRange, "member " + std::to_string(i));
  }
  return slots_[g.begin + static_cast<std::size_t>(i)];
}

bool CutQueue::Audit() const {
  const std::size_t m = slots_.size();
  if (position_.size() != m || group_of_.size() != m || active_.size() != m ||
      scores_.size() != m) {
    return false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (slots_[i] >= m || position_[slots_[i]] != i) return false;
  }
  std::size_t expected_begin = 0;
  std::int64_t total = 0;
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const Group& g = groups_[gi];
    if (g.begin != expected_begin || g.end <= g.begin) return false;
    if (gi > 0 && groups_[gi - 1].key <= g.key) return false;
    if (g.active < 0 ||
        g.active > static_cast<std::int64_t>(g.end - g.begin)) {
      return false;
    }
    for (std::size_t i = g.begin; i < g.end; ++i) {
      const EdgeId e = slots_[i];
      if (group_of_[e] != gi) return false;
      if (Discretize(scores_[e], step_) != g.key) return false;
      const bool in_prefix = i < g.begin + static_cast<std::size_t>(g.active);
      if ((active_[e] != 0) != in_prefix) return false;
    }
    const auto it = group_index_.find(g.key);
    if (it == group_index_.end() || it->second != gi) return false;
    expected_begin = g.end;
    total += g.active;
  }
  if (expected_begin != m || total != active_total_) return false;
  if (group_index_.size() != groups_.size()) return false;

  if (levels_.empty() || levels_[0].size() != groups_.size()) return false;
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    if (levels_[0][gi] != groups_[gi].active) return false;
  }
  const auto b = static_cast<std::size_t>(block_);
  for (std::size_t l = 1; l < levels_.size(); ++l) {
    const auto& below = levels_[l - 1];
    const auto& here = levels_[l];
    if (here.size() != (below.size() + b - 1) / b) return false;
    for (std::size_t j = 0; j < here.size(); ++j) {
      std::int64_t sum = 0;
      for (std::size_t c = j * b; c < std::min((j + 1) * b, below.size()); ++c) {
        sum += below[c];
      }
      if (sum != here[j]) return false;
    }
  }
  return levels_.back().size() <= std::max<std::size_t>(b, 1);
}

}  // namespace dpmst
