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

#include "dpmst/private_mst.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "dpmst/cut_queue.h"
#include "dpmst/error.h"
#include "dpmst/noise.h"

namespace dpmst {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ElapsedNs(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                              since)
      .count();
}

void CheckInputs(const Graph& graph, const WeightAssignment& weights,
                 const PrivacySpec& spec) {
  spec.Validate();
  if (weights.size() != graph.edge_count()) {
    throw Error(ErrorCode::kInvalidParam, "weights do not match graph");
  }
  if (!graph.IsConnected()) {
    throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
  }
}

void CheckStart(const Graph& graph, const MstOptions& options) {
  if (options.start_vertex >= graph.vertex_count()) {
    throw Error(ErrorCode::kInvalidParam, "start vertex out of range");
  }
}

BudgetLedger ComposeLedger(std::size_t n, const PrivacySpec& spec, double rate,
                           double step) {
  BudgetLedger ledger;
  ledger.mode = spec.mode;
  ledger.rate = rate;
  ledger.step = step;
  const StepPrivacy each = PerStepPrivacy(rate, spec.sensitivity, step);
  ledger.per_step.assign(n - 1, each);
  for (const StepPrivacy& s : ledger.per_step) {
    ledger.total_epsilon += s.epsilon;
    ledger.total_rho += s.rho;
  }
  if (spec.mode == PrivacyMode::kZcdp) {
    ledger.utility_bound = UtilityBound(n, spec.rho, spec.sensitivity,
                                        spec.FailureProbabilityFor(n));
  }
  return ledger;
}

// Best active edge of the top group by raw score; ties to the lowest id.
EdgeId NoiselessSelect(const CutQueue& queue) {
  const auto top = queue.max_active_group_index();
  if (!top) throw Error(ErrorCode::kEmptyCandidates, "cut is empty");
  EdgeId best = queue.active_member_at(*top, 0);
  for (std::int64_t i = 1; i < queue.active_in_group_at(*top); ++i) {
    const EdgeId e = queue.active_member_at(*top, i);
    const double a = queue.ScoreOf(e);
    const double b = queue.ScoreOf(best);
    if (a > b || (a == b && e < best)) best = e;
  }
  return best;
}

}  // namespace

PrivacySpec PrivacySpec::Zcdp(double rho, double sensitivity) {
  PrivacySpec spec;
  spec.mode = PrivacyMode::kZcdp;
  spec.rho = rho;
  spec.sensitivity = sensitivity;
  return spec;
}

PrivacySpec PrivacySpec::PureDp(double epsilon, double sensitivity) {
  PrivacySpec spec;
  spec.mode = PrivacyMode::kPureDp;
  spec.epsilon = epsilon;
  spec.sensitivity = sensitivity;
  return spec;
}

void PrivacySpec::Validate() const {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (mode == PrivacyMode::kZcdp && !positive(rho)) {
    throw Error(ErrorCode::kInvalidParam, "rho must be positive");
  }
  if (mode == PrivacyMode::kPureDp && !positive(epsilon)) {
    throw Error(ErrorCode::kInvalidParam, "epsilon must be positive");
  }
  if (!positive(sensitivity)) {
    throw Error(ErrorCode::kInvalidParam, "sensitivity must be positive");
  }
  if (step && !positive(*step)) {
    throw Error(ErrorCode::kInvalidParam, "step must be positive");
  }
  if (failure_probability &&
      !(*failure_probability > 0.0 && *failure_probability < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "failure probability outside (0,1)");
  }
}

double UtilityBound(std::size_t n, double rho, double sensitivity, double mu) {
  if (n < 2 || !(rho > 0.0) || !(sensitivity > 0.0) ||
      !(mu > 0.0 && mu < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "utility bound parameters");
  }
  const double nd = static_cast<double>(n);
  return 4.0 * (nd - 1.0) * sensitivity * std::sqrt(nd / (2.0 * rho)) *
         std::log(nd * nd / mu);
}

double FastPamstRate(std::size_t n, const PrivacySpec& spec) {
  spec.Validate();
  if (n < 2) throw Error(ErrorCode::kInvalidParam, "n must be >= 2");
  const double steps = static_cast<double>(n - 1);
  const double step_epsilon = spec.mode == PrivacyMode::kZcdp
                                  ? std::sqrt(2.0 * spec.rho / steps)
                                  : spec.epsilon / steps;
  return step_epsilon / (2.0 * (spec.sensitivity + spec.StepOrDefault()));
}

double FastPamstThreshold(std::size_t n, const PrivacySpec& spec, double rate,
                          const MstOptions& options) {
  if (!(options.threshold_coefficient > 0.0)) {
    throw Error(ErrorCode::kInvalidParam, "threshold coefficient must be > 0");
  }
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  double raw = 0.0;
  switch (options.threshold_rule) {
    case ThresholdRule::kUnionBound:
      raw = options.threshold_coefficient * log_n / rate;
      break;
    case ThresholdRule::kSqrtNLogN: {
      const double rho = spec.mode == PrivacyMode::kZcdp
                             ? spec.rho
                             : spec.epsilon * spec.epsilon / 2.0;
      raw = options.threshold_coefficient * std::sqrt(nd) * log_n *
            spec.sensitivity / std::sqrt(rho);
      break;
    }
  }
  const double step = spec.StepOrDefault();
  const double steps = std::max(1.0, std::ceil(raw / step));
  if (!(steps < 0x1.0p52)) {
    throw Error(ErrorCode::kInvalidParam, "threshold too large for step");
  }
  return steps * step;
}

PrivateTree FastPamst(RngStream& rng, const Graph& graph,
                      const WeightAssignment& weights, const PrivacySpec& spec,
                      const MstOptions& options) {
  CheckInputs(graph, weights, spec);
  CheckStart(graph, options);
  const std::size_t n = graph.vertex_count();
  const double step = spec.StepOrDefault();
  const double rate = FastPamstRate(n, spec);
  const double threshold = FastPamstThreshold(n, spec, rate, options);
  const std::int64_t threshold_steps = ThresholdSteps(threshold, step);
  const double opt = TreeWeight(
      weights, MinimumSpanningTreeEdges(graph, weights.weights()));

  const auto start = Clock::now();
  CutQueue queue = CutQueue::Build(graph, weights, step, /*negate=*/true,
                                   {.layers = options.queue_layers});
  std::vector<char> visited(n, 0);
  std::vector<EdgeId> tree;
  tree.reserve(n - 1);
  SelectionStats stats;
  Vertex v = options.start_vertex;
  visited[v] = 1;
  for (std::size_t added = 0; added + 1 < n; ++added) {
    for (EdgeId e : graph.incident(v)) {
      if (!visited[graph.Other(e, v)]) {
        queue.Insert(e);
      } else if (queue.IsActive(e)) {
        queue.Remove(e);
      }
    }
    const EdgeId chosen =
        options.noiseless
            ? NoiselessSelect(queue)
            : FastNoisyMaxOver(rng, queue, Rate(rate), step, threshold_steps,
                               /*tail_enabled=*/true, &stats);
    queue.Remove(chosen);
    const Edge& ed = graph.edge(chosen);
    v = visited[ed.u] ? ed.v : ed.u;
    visited[v] = 1;
    tree.push_back(chosen);
  }
  const std::int64_t elapsed = ElapsedNs(start);

  PrivateTree out;
  out.tree = MakeTreeResult(weights, std::move(tree), opt);
  out.tree.counters.samples_drawn = stats.noise_samples;
  out.tree.counters.bottom_hits = stats.bottom_hits;
  out.tree.counters.max_lookup_comparisons =
      queue.stats().max_lookup_comparisons;
  out.tree.counters.total_comparisons = queue.stats().lookup_comparisons;
  out.tree.counters.elapsed_ns = elapsed;
  out.ledger = ComposeLedger(n, spec, rate, step);
  out.ledger.threshold = threshold;
  return out;
}

double PamstBaselineRate(std::size_t n, const PrivacySpec& spec) {
  spec.Validate();
  if (n < 2) throw Error(ErrorCode::kInvalidParam, "n must be >= 2");
  if (spec.mode == PrivacyMode::kZcdp) {
    return std::sqrt(2.0 * spec.rho) /
           (2.0 * std::sqrt(static_cast<double>(n)) * spec.sensitivity);
  }
  return spec.epsilon /
         (2.0 * static_cast<double>(n - 1) * spec.sensitivity);
}

PrivateTree PamstBaseline(RngStream& rng, const Graph& graph,
                          const WeightAssignment& weights,
                          const PrivacySpec& spec, const MstOptions& options) {
  CheckInputs(graph, weights, spec);
  CheckStart(graph, options);
  const std::size_t n = graph.vertex_count();
  const double rate = PamstBaselineRate(n, spec);
  const double opt = TreeWeight(
      weights, MinimumSpanningTreeEdges(graph, weights.weights()));

  const auto start = Clock::now();
  constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<Candidate> cut;
  std::vector<std::size_t> slot(graph.edge_count(), kAbsent);
  auto remove = [&](EdgeId e) {
    const std::size_t i = slot[e];
    slot[cut.back().edge] = i;
    cut[i] = cut.back();
    cut.pop_back();
    slot[e] = kAbsent;
  };

  std::vector<char> visited(n, 0);
  std::vector<EdgeId> tree;
  tree.reserve(n - 1);
  SelectionStats stats;
  Vertex v = options.start_vertex;
  visited[v] = 1;
  for (std::size_t added = 0; added + 1 < n; ++added) {
    for (EdgeId e : graph.incident(v)) {
      if (!visited[graph.Other(e, v)]) {
        slot[e] = cut.size();
        cut.push_back({e, -weights.weight(e)});
      } else if (slot[e] != kAbsent) {
        remove(e);
      }
    }
    EdgeId chosen;
    if (options.noiseless) {
      if (cut.empty()) throw Error(ErrorCode::kEmptyCandidates, "cut is empty");
      const Candidate* best = &cut.front();
      for (const Candidate& c : cut) {
        if (c.score > best->score ||
            (c.score == best->score && c.edge < best->edge)) {
          best = &c;
        }
      }
      chosen = best->edge;
    } else {
      chosen = NaiveNoisyMax(rng, cut, Rate(rate), &stats);
    }
    remove(chosen);
    const Edge& ed = graph.edge(chosen);
    v = visited[ed.u] ? ed.v : ed.u;
    visited[v] = 1;
    tree.push_back(chosen);
  }
  const std::int64_t elapsed = ElapsedNs(start);

  PrivateTree out;
  out.tree = MakeTreeResult(weights, std::move(tree), opt);
  out.tree.counters.samples_drawn = stats.noise_samples;
  out.tree.counters.elapsed_ns = elapsed;
  out.ledger = ComposeLedger(n, spec, rate, /*step=*/0.0);
  return out;
}

TreeResult PostProcessGaussian(RngStream& rng, const Graph& graph,
                               const WeightAssignment& weights,
                               const PrivacySpec& spec) {
  CheckInputs(graph, weights, spec);
  if (spec.mode != PrivacyMode::kZcdp) {
    throw Error(ErrorCode::kInvalidParam, "Gaussian post-processing needs zCDP");
  }
  const double n = static_cast<double>(graph.vertex_count());
  const double opt = TreeWeight(
      weights, MinimumSpanningTreeEdges(graph, weights.weights()));

  const auto start = Clock::now();
  // l2 sensitivity of the whole matrix under l-infinity neighbors is taken
  // as n * sqrt(sensitivity), so the variance is n^2 * sensitivity / (2 rho).
  const double sigma = n * std::sqrt(spec.sensitivity / (2.0 * spec.rho));
  std::vector<double> noisy(weights.weights().begin(), weights.weights().end());
  for (double& w : noisy) w += SampleGaussian(rng, sigma);
  std::vector<EdgeId> tree = MinimumSpanningTreeEdges(graph, noisy);
  const std::int64_t elapsed = ElapsedNs(start);

  TreeResult result = MakeTreeResult(weights, std::move(tree), opt);
  result.counters.samples_drawn = static_cast<std::int64_t>(noisy.size());
  result.counters.elapsed_ns = elapsed;
  return result;
}

TreeResult PostProcessLaplace(RngStream& rng, const Graph& graph,
                              const WeightAssignment& weights,
                              const PrivacySpec& spec,
                              Neighborhood neighborhood) {
  CheckInputs(graph, weights, spec);
  if (spec.mode != PrivacyMode::kPureDp) {
    throw Error(ErrorCode::kInvalidParam, "Laplace post-processing needs pure DP");
  }
  const double n = static_cast<double>(graph.vertex_count());
  const double opt = TreeWeight(
      weights, MinimumSpanningTreeEdges(graph, weights.weights()));

  const auto start = Clock::now();
  const double scale = neighborhood == Neighborhood::kLInf
                           ? n * n * spec.sensitivity / spec.epsilon
                           : spec.sensitivity / spec.epsilon;
  std::vector<double> noisy(weights.weights().begin(), weights.weights().end());
  for (double& w : noisy) w += SampleLaplace(rng, scale);
  std::vector<EdgeId> tree = MinimumSpanningTreeEdges(graph, noisy);
  const std::int64_t elapsed = ElapsedNs(start);

  TreeResult result = MakeTreeResult(weights, std::move(tree), opt);
  result.counters.samples_drawn = static_cast<std::int64_t>(noisy.size());
  result.counters.elapsed_ns = elapsed;
  return result;
}

}  // namespace dpmst
