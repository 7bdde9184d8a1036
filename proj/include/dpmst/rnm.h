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

#ifndef DPMST_RNM_H_
#define DPMST_RNM_H_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dpmst/error.h"
#include "dpmst/graph.h"
#include "dpmst/noise.h"
#include "dpmst/rng.h"

// Report-Noisy-Max and its fast simulations. Everything here maximizes; the
// MST drivers pass negated weights as scores.

namespace dpmst {

struct Candidate {
  EdgeId edge;
  double score;
};

// Largest integer g with g * step <= score, where quotients within a few ulps
// of an integer snap to that integer (so 0.3 / 0.1 gives 3). Throws
// InvalidParam on step <= 0 or a non-finite score.
std::int64_t Discretize(double score, double step);

struct ScoreGroup {
  std::int64_t key;
  double score;  // common score of every member
  std::vector<EdgeId> members;
};

// Candidates partitioned into equal-score groups, ordered by strictly
// decreasing key (and score).
class GroupPartition {
 public:
  // Groups by Discretize(score, step); a group's score is key * step.
  static GroupPartition Discretized(std::span<const Candidate> candidates,
                                    double step);
  // Groups candidates with identical raw scores. Keys are 0, -1, -2, ... in
  // descending score order; step() is empty.
  static GroupPartition ByEqualScore(std::span<const Candidate> candidates);

  std::span<const ScoreGroup> groups() const { return groups_; }
  std::size_t candidate_count() const { return prefix_.back(); }
  std::optional<double> step() const { return step_; }

  // Read-only grouped view used by the fast selector; every member counts
  // as active.
  std::size_t group_count() const { return groups_.size(); }
  std::int64_t group_key_at(std::size_t gi) const { return groups_[gi].key; }
  std::int64_t active_in_group_at(std::size_t gi) const {
    return static_cast<std::int64_t>(groups_[gi].members.size());
  }
  EdgeId active_member_at(std::size_t gi, std::int64_t i) const {
    return groups_[gi].members[static_cast<std::size_t>(i)];
  }
  std::optional<std::size_t> max_active_group_index() const {
    if (groups_.empty()) return std::nullopt;
    return 0;
  }
  std::int64_t active_count_from(std::size_t gi) const {
    return static_cast<std::int64_t>(prefix_.back() - prefix_[gi]);
  }
  struct ActiveRef {
    std::size_t group;
    EdgeId edge;
  };
  ActiveRef select_active_from(std::size_t gi, std::int64_t rank) const;

 private:
  GroupPartition(std::vector<ScoreGroup> groups, std::optional<double> step);

  std::vector<ScoreGroup> groups_;
  std::vector<std::size_t> prefix_;  // prefix_[i] = members in groups [0, i)
  std::optional<double> step_;
};

struct RnmParams {
  Rate rate;
  double sensitivity;
  double step;
  double threshold;  // M, in score units; a positive multiple of step
  bool tail_enabled = true;
};

struct SelectionStats {
  std::int64_t noise_samples = 0;
  std::int64_t top_groups = 0;
  std::int64_t bottom_size = 0;
  std::int64_t bottom_hits = 0;
};

// Plain Report-Noisy-Max: one Exp(rate) draw per candidate. Ties go to the
// larger base score, then the lowest edge id. Throws EmptyCandidates.
EdgeId NaiveNoisyMax(RngStream& rng, std::span<const Candidate> candidates,
                     Rate rate, SelectionStats* stats = nullptr);

// One MaxExp(|group|, rate) draw per group, then a uniform member of the
// winning group. Same output law as NaiveNoisyMax on the member scores.
EdgeId GroupedNoisyMax(RngStream& rng, const GroupPartition& partition,
                       Rate rate, SelectionStats* stats = nullptr);

struct TailSample {
  std::uint64_t rank;  // index into the bottom set, in [0, bottom_size)
  double noise;        // >= threshold
};

// Noise exceedances of a bottom set whose members are all more than
// `threshold` below the maximum: k ~ Binomial(bottom_size,
// exp(-rate * threshold)) members chosen uniformly, each with noise
// threshold + Exp(rate). Members not returned are clipped at `threshold`.
std::vector<TailSample> SampleBottomTail(RngStream& rng,
                                         std::uint64_t bottom_size, Rate rate,
                                         double threshold);

// Probability that SampleBottomTail returns anything.
double BottomTailProbability(std::uint64_t bottom_size, Rate rate,
                             double threshold);

// Discretized Report-Noisy-Max over a discretized partition, sampling only
// the groups within `threshold` of the top plus the bottom tail.
EdgeId FastNoisyMax(RngStream& rng, const GroupPartition& partition,
                    const RnmParams& params, SelectionStats* stats = nullptr);

struct StepPrivacy {
  double epsilon;
  double rho;
};

// epsilon = 2 * rate * (sensitivity + step), rho = epsilon^2 / 2. `step` may
// be 0 for undiscretized selection.
StepPrivacy PerStepPrivacy(double rate, double sensitivity, double step);

// Converts a threshold in score units to a whole number of steps. Throws
// InvalidParam unless it is a positive multiple of step.
std::int64_t ThresholdSteps(double threshold, double step);

// A set of edges partitioned into groups with strictly decreasing integer
// keys (index 0 is the largest), some of which are active.
template <typename S>
concept GroupedActiveSet = requires(const S& s, std::size_t gi,
                                    std::int64_t i) {
  { s.group_count() } -> std::convertible_to<std::size_t>;
  { s.group_key_at(gi) } -> std::convertible_to<std::int64_t>;
  { s.active_in_group_at(gi) } -> std::convertible_to<std::int64_t>;
  { s.active_member_at(gi, i) } -> std::convertible_to<EdgeId>;
  { s.max_active_group_index() } -> std::same_as<std::optional<std::size_t>>;
  { s.active_count_from(gi) } -> std::convertible_to<std::int64_t>;
  { s.select_active_from(gi, i).group } -> std::convertible_to<std::size_t>;
  { s.select_active_from(gi, i).edge } -> std::convertible_to<EdgeId>;
};

// Core of FastNoisyMax over any grouped active set. Group scores are
// key * step. Groups with key >= top_key - threshold_steps get one MaxExp
// draw each; everything below is the bottom set, sampled through
// SampleBottomTail. Output law equals NaiveNoisyMax over the discretized
// scores of the active edges.
template <GroupedActiveSet S>
EdgeId FastNoisyMaxOver(RngStream& rng, const S& set, Rate rate, double step,
                        std::int64_t threshold_steps, bool tail_enabled,
                        SelectionStats* stats) {
  const std::optional<std::size_t> top = set.max_active_group_index();
  if (!top) throw Error(ErrorCode::kEmptyCandidates, "no active candidates");
  const std::int64_t top_key = set.group_key_at(*top);
  const std::int64_t cut_key = tail_enabled
                                   ? top_key - threshold_steps
                                   : std::numeric_limits<std::int64_t>::min();
  const std::size_t group_count = set.group_count();

  // Values are kept relative to the top group's score.
  double best_value = -std::numeric_limits<double>::infinity();
  std::size_t best_group = *top;
  std::int64_t samples = 0;
  std::int64_t top_groups = 0;
  std::size_t gi = *top;
  for (; gi < group_count && set.group_key_at(gi) >= cut_key; ++gi) {
    const std::int64_t active = set.active_in_group_at(gi);
    if (active == 0) continue;
    const double noise = SampleMaxExp(rng, active, rate);
    ++samples;
    ++top_groups;
    const double value =
        static_cast<double>(set.group_key_at(gi) - top_key) * step + noise;
    // Keys decrease with gi, so on equal values the earlier group keeps the
    // larger base score.
    if (value > best_value) {
      best_value = value;
      best_group = gi;
    }
  }
  const auto pick = SampleUniformIndex(
      rng, static_cast<std::uint64_t>(set.active_in_group_at(best_group)));
  EdgeId best_edge =
      set.active_member_at(best_group, static_cast<std::int64_t>(pick));
  std::int64_t best_key = set.group_key_at(best_group);

  std::int64_t bottom_size = 0;
  std::int64_t bottom_hits = 0;
  if (gi < group_count) {
    bottom_size = set.active_count_from(gi);
  }
  if (bottom_size > 0) {
    const double threshold = static_cast<double>(threshold_steps) * step;
    const std::vector<TailSample> tail = SampleBottomTail(
        rng, static_cast<std::uint64_t>(bottom_size), rate, threshold);
    ++samples;  // the binomial count
    samples += static_cast<std::int64_t>(tail.size());
    bottom_hits = static_cast<std::int64_t>(tail.size());
    for (const TailSample& t : tail) {
      const auto ref =
          set.select_active_from(gi, static_cast<std::int64_t>(t.rank));
      const std::int64_t key = set.group_key_at(ref.group);
      // (key - top_key + threshold_steps) <= -1, so a clipped bottom value
      // is strictly below the top group's noisy value.
      const double value =
          static_cast<double>(key - top_key + threshold_steps) * step +
          (t.noise - threshold);
      const bool better =
          value > best_value ||
          (value == best_value &&
           (key > best_key || (key == best_key && ref.edge < best_edge)));
      if (better) {
        best_value = value;
        best_key = key;
        best_edge = ref.edge;
      }
    }
  }
  if (stats != nullptr) {
    stats->noise_samples += samples;
    stats->top_groups += top_groups;
    stats->bottom_size += bottom_size;
    stats->bottom_hits += bottom_hits;
  }
  return best_edge;
}

}  // namespace dpmst

#endif  // DPMST_RNM_H_
