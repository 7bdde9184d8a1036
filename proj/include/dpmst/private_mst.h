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

#ifndef DPMST_PRIVATE_MST_H_
#define DPMST_PRIVATE_MST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpmst/graph.h"
#include "dpmst/rng.h"
#include "dpmst/rnm.h"

namespace dpmst {

enum class PrivacyMode { kZcdp, kPureDp };

struct PrivacySpec {
  PrivacyMode mode = PrivacyMode::kZcdp;
  double rho = 0.0;      // used in kZcdp
  double epsilon = 0.0;  // used in kPureDp
  double sensitivity = 1.0;
  // mu for the utility bound; 1/n when unset.
  std::optional<double> failure_probability;
  // Discretization step s; the sensitivity when unset.
  std::optional<double> step;

  static PrivacySpec Zcdp(double rho, double sensitivity);
  static PrivacySpec PureDp(double epsilon, double sensitivity);

  double StepOrDefault() const { return step.value_or(sensitivity); }
  double FailureProbabilityFor(std::size_t n) const {
    return failure_probability.value_or(1.0 / static_cast<double>(n));
  }
  // Throws InvalidParam.
  void Validate() const;
};

// How Fast-PAMST picks the bottom-set threshold M before rounding it up to a
// multiple of the step.
enum class ThresholdRule {
  // M = c * ln(n) / rate. Any single bottom sample across a whole run has
  // probability at most (n - 1) * n^2 * n^-c, below 1/n at the default c = 4.
  kUnionBound,
  // M = c * sqrt(n) * ln(n) * sensitivity / sqrt(rho). Pure DP substitutes
  // rho = epsilon^2 / 2.
  kSqrtNLogN,
};

struct MstOptions {
  Vertex start_vertex = 0;
  // Test-only limit of infinite rate: every step takes the exact best cut
  // edge. The ledger is meaningless in this mode.
  bool noiseless = false;
  ThresholdRule threshold_rule = ThresholdRule::kUnionBound;
  double threshold_coefficient = 4.0;
  int queue_layers = 4;
};

struct BudgetLedger {
  PrivacyMode mode = PrivacyMode::kZcdp;
  double rate = 0.0;       // per-step exponential rate
  double step = 0.0;       // discretization step (0 when undiscretized)
  double threshold = 0.0;  // bottom-set threshold M (Fast-PAMST only)
  std::vector<StepPrivacy> per_step;
  double total_epsilon = 0.0;
  double total_rho = 0.0;
  std::optional<double> utility_bound;  // zCDP only
};

struct PrivateTree {
  TreeResult tree;
  BudgetLedger ledger;
};

// Per-step rate of Fast-PAMST: the budget is split evenly over n - 1
// selections, each costing epsilon_i = 2 * rate * (sensitivity + step).
double FastPamstRate(std::size_t n, const PrivacySpec& spec);

// Threshold M for Fast-PAMST, rounded up to a positive multiple of the step.
double FastPamstThreshold(std::size_t n, const PrivacySpec& spec, double rate,
                          const MstOptions& options);

// Prim-Jarnik from options.start_vertex where every step selects a cut edge
// by the fast discretized noisy max over a CutQueue. Throws
// DisconnectedGraph, InvalidParam.
PrivateTree FastPamst(RngStream& rng, const Graph& graph,
                      const WeightAssignment& weights, const PrivacySpec& spec,
                      const MstOptions& options = {});

// Per-step rate of the baseline: sqrt(2 rho) / (2 sqrt(n) sensitivity) for
// zCDP, epsilon / (2 (n - 1) sensitivity) for pure DP.
double PamstBaselineRate(std::size_t n, const PrivacySpec& spec);

// Same Prim skeleton with plain Report-Noisy-Max over every active cut edge
// on raw negated weights: one noise draw per cut edge per step.
PrivateTree PamstBaseline(RngStream& rng, const Graph& graph,
                          const WeightAssignment& weights,
                          const PrivacySpec& spec,
                          const MstOptions& options = {});

// Adds N(0, n^2 * sensitivity / (2 rho)) to every weight and returns the
// exact MST of the noisy weights. Requires zCDP mode.
TreeResult PostProcessGaussian(RngStream& rng, const Graph& graph,
                               const WeightAssignment& weights,
                               const PrivacySpec& spec);

enum class Neighborhood { kLInf, kL1 };

// Adds Lap(n^2 * sensitivity / epsilon) per weight (Lap(sensitivity /
// epsilon) for kL1) and returns the exact MST of the noisy weights. Requires
// pure-DP mode.
TreeResult PostProcessLaplace(RngStream& rng, const Graph& graph,
                              const WeightAssignment& weights,
                              const PrivacySpec& spec,
                              Neighborhood neighborhood = Neighborhood::kLInf);

// 4 (n - 1) sensitivity sqrt(n / (2 rho)) ln(n^2 / mu). Throws InvalidParam.
double UtilityBound(std::size_t n, double rho, double sensitivity, double mu);

}  // namespace dpmst

#endif  // DPMST_PRIVATE_MST_H_
