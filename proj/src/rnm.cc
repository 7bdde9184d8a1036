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

#include "dpmst/rnm.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace dpmst {
namespace {

constexpr double kSnapUlps = 8.0;

// True if candidate (value, key, edge) beats the current best under the
// tie-break order: noisy value, then base score, then lowest edge id.
bool Beats(double value, double score, EdgeId edge, double best_value,
           double best_score, EdgeId best_edge) {
  if (value != best_value) return value > best_value;
  if (score != best_score) return score > best_score;
  return edge < best_edge;
}

}  // namespace

std::int64_t Discretize(double score, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidParam, "step must be finite and positive");
  }
  if (!std::isfinite(score)) {
    throw Error(ErrorCode::kInvalidParam, "score must be finite");
  }
  const double q = score / step;
  if (!(std::abs(q) < 0x1.0p62)) {
    throw Error(ErrorCode::kInvalidParam, "score / step out of key range");
  }
  const double nearest = std::nearbyint(q);
  const double tol =
      kSnapUlps * std::numeric_limits<double>::epsilon() *
      std::max(1.0, std::abs(q));
  if (std::abs(q - nearest) <= tol) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(q));
}

GroupPartition::GroupPartition(std::vector<ScoreGroup> groups,
                               std::optional<double> step)
    : groups_(std::move(groups)), step_(step) {
  prefix_.assign(groups_.size() + 1, 0);
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    prefix_[i + 1] = prefix_[i] + groups_[i].members.size();
  }
}

GroupPartition GroupPartition::Discretized(
    std::span<const Candidate> candidates, double step) {
  std::map<std::int64_t, std::vector<EdgeId>, std::greater<>> by_key;
  for (const Candidate& c : candidates) {
    by_key[Discretize(c.score, step)].push_back(c.edge);
  }
  std::vector<ScoreGroup> groups;
  groups.reserve(by_key.size());
  for (auto& [key, members] : by_key) {
    groups.push_back(
        {key, static_cast<double>(key) * step, std::move(members)});
  }
  return GroupPartition(std::move(groups), step);
}

GroupPartition GroupPartition::ByEqualScore(
    std::span<const Candidate> candidates) {
  std::map<double, std::vector<EdgeId>, std::greater<>> by_score;
  for (const Candidate& c : candidates) {
    if (!std::isfinite(c.score)) {
      throw Error(ErrorCode::kInvalidParam, "score must be finite");
    }
    by_score[c.score].push_back(c.edge);
  }
  std::vector<ScoreGroup> groups;
  groups.reserve(by_score.size());
  std::int64_t key = 0;
  for (auto& [score, members] : by_score) {
    groups.push_back({key--, score, std::move(members)});
  }
  return GroupPartition(std::move(groups), std::nullopt);
}

GroupPartition::ActiveRef GroupPartition::select_active_from(
    std::size_t gi, std::int64_t rank) const {
  const std::size_t global = prefix_[gi] + static_cast<std::size_t>(rank);
  if (rank < 0 || global >= prefix_.back()) {
    throw Error(ErrorCode::kRankOutOfRange, "rank " + std::to_string(rank));
  }
  // First group whose end prefix exceeds `global`.
  const auto it = std::upper_bound(prefix_.begin() + 1, prefix_.end(), global);
  const auto g = static_cast<std::size_t>(it - prefix_.begin() - 1);
  return {g, groups_[g].members[global - prefix_[g]]};
}

EdgeId NaiveNoisyMax(RngStream& rng, std::span<const Candidate> candidates,
                     Rate rate, SelectionStats* stats) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "no candidates");
  }
  double best_value = -std::numeric_limits<double>::infinity();
  double best_score = -std::numeric_limits<double>::infinity();
  EdgeId best_edge = candidates.front().edge;
  for (const Candidate& c : candidates) {
    const double value = c.score + SampleExp(rng, rate);
    if (Beats(value, c.score, c.edge, best_value, best_score, best_edge)) {
      best_value = value;
      best_score = c.score;
      best_edge = c.edge;
    }
  }
  if (stats != nullptr) {
    stats->noise_samples += static_cast<std::int64_t>(candidates.size());
  }
  return best_edge;
}

EdgeId GroupedNoisyMax(RngStream& rng, const GroupPartition& partition,
                       Rate rate, SelectionStats* stats) {
  const auto groups = partition.groups();
  if (groups.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "no candidate groups");
  }
  double best_value = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double value =
        groups[i].score +
        SampleMaxExp(rng, static_cast<std::int64_t>(groups[i].members.size()),
                     rate);
    // Groups are listed by decreasing score: strict > keeps the larger base
    // score, then the first-listed group, on ties.
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  if (stats != nullptr) {
    stats->noise_samples += static_cast<std::int64_t>(groups.size());
    stats->top_groups += static_cast<std::int64_t>(groups.size());
  }
  const auto& members = groups[best].members;
  return members[SampleUniformIndex(rng, members.size())];
}

std::vector<TailSample> SampleBottomTail(RngStream& rng,
                                         std::uint64_t bottom_size, Rate rate,
                                         double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorCode::kInvalidParam, "threshold must be positive");
  }
  std::vector<TailSample> out;
  if (bottom_size == 0) return out;
  const double p = std::exp(-rate.value() * threshold);
  const auto k = static_cast<std::uint64_t>(
      SampleBinomial(rng, static_cast<std::int64_t>(bottom_size), p));
  if (k == 0) return out;
  const std::vector<std::uint64_t> ranks =
      SampleDistinctIndices(rng, bottom_size, k);
  out.reserve(k);
  // Memorylessness: Exp conditioned on exceeding M is M + Exp.
  for (std::uint64_t r : ranks) {
    out.push_back({r, threshold + SampleExp(rng, rate)});
  }
  return out;
}

double BottomTailProbability(std::uint64_t bottom_size, Rate rate,
                             double threshold) {
  const double p = std::exp(-rate.value() * threshold);
  return -std::expm1(static_cast<double>(bottom_size) * std::log1p(-p));
}

std::int64_t ThresholdSteps(double threshold, double step) {
  if (!(step > 0.0) || !(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorCode::kInvalidParam,
                "threshold and step must be finite and positive");
  }
  const double q = threshold / step;
  const double nearest = std::nearbyint(q);
  if (nearest < 1.0 || std::abs(q - nearest) > 1e-9 * nearest ||
      nearest > 0x1.0p52) {
    throw Error(ErrorCode::kInvalidParam,
                "threshold must be a positive multiple of step");
  }
  return static_cast<std::int64_t>(nearest);
}

EdgeId FastNoisyMax(RngStream& rng, const GroupPartition& partition,
                    const RnmParams& params, SelectionStats* stats) {
  if (partition.group_count() == 0) {
    throw Error(ErrorCode::kEmptyCandidates, "no candidate groups");
  }
  if (!partition.step() || *partition.step() != params.step) {
    throw Error(ErrorCode::kInvalidParam,
                "partition must be discretized with params.step");
  }
  const std::int64_t steps = ThresholdSteps(params.threshold, params.step);
  return FastNoisyMaxOver(rng, partition, params.rate, params.step, steps,
                          params.tail_enabled, stats);
}

StepPrivacy PerStepPrivacy(double rate, double sensitivity, double step) {
  if (!(rate >= 0.0) || !std::isfinite(rate) || !(sensitivity > 0.0) ||
      !(step >= 0.0)) {
    throw Error(ErrorCode::kInvalidParam,
                "rate, sensitivity and step must be non-negative and finite");
  }
  const double epsilon = 2.0 * rate * (sensitivity + step);
  return {epsilon, epsilon * epsilon / 2.0};
}

}  // namespace dpmst
