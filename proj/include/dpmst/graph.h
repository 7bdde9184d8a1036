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

#ifndef DPMST_GRAPH_H_
#define DPMST_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dpmst {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge stored canonically with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Public topology: vertex count, canonical edge list with dense ids, and a
// CSR incidence index. Immutable after construction.
class Graph {
 public:
  // Canonicalizes each pair to (min, max). Throws InvalidParam on n < 2,
  // out-of-range endpoints, self-loops or duplicate edges.
  static Graph Create(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  // Ids of the edges incident to v.
  std::span<const EdgeId> incident(Vertex v) const {
    return {incident_.data() + offsets_[v],
            incident_.data() + offsets_[v + 1]};
  }

  Vertex Other(EdgeId e, Vertex v) const {
    const Edge& ed = edges_[e];
    return ed.u == v ? ed.v : ed.u;
  }

  bool IsConnected() const;

 private:
  Graph() = default;

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> incident_;
};

// Private per-edge weights of a companion Graph plus the l-infinity
// sensitivity bound between neighboring assignments.
class WeightAssignment {
 public:
  // Throws InvalidParam if the weight count differs from the edge count, a
  // weight is not finite, or sensitivity is not finite and positive.
  static WeightAssignment Create(const Graph& graph, std::vector<double> weights,
                                 double sensitivity);

  std::span<const double> weights() const { return weights_; }
  double weight(EdgeId e) const { return weights_[e]; }
  double sensitivity() const { return sensitivity_; }
  std::size_t size() const { return weights_.size(); }

 private:
  WeightAssignment(std::vector<double> weights, double sensitivity)
      : weights_(std::move(weights)), sensitivity_(sensitivity) {}

  std::vector<double> weights_;
  double sensitivity_;
};

struct RunCounters {
  std::int64_t samples_drawn = 0;
  // Largest comparison count of a single maximum lookup in the cut queue.
  std::int64_t max_lookup_comparisons = 0;
  std::int64_t total_comparisons = 0;
  std::int64_t bottom_hits = 0;
  std::int64_t elapsed_ns = 0;
};

struct TreeResult {
  std::vector<EdgeId> tree_edges;  // ascending edge ids
  double true_weight = 0.0;
  double opt_weight = 0.0;
  double error = 0.0;
  RunCounters counters;
};

// Sum of weights over `edge_ids`, in list order. Throws UnknownEdge.
double TreeWeight(const WeightAssignment& weights,
                  std::span<const EdgeId> edge_ids);

bool IsSpanningTree(const Graph& graph, std::span<const EdgeId> edge_ids);

// Kruskal over `weights`, ties broken by lowest edge id. Returns ascending
// edge ids. Throws DisconnectedGraph.
std::vector<EdgeId> MinimumSpanningTreeEdges(const Graph& graph,
                                             std::span<const double> weights);

// Exact (non-private) minimum spanning tree; error is 0 by construction.
TreeResult ExactMst(const Graph& graph, const WeightAssignment& weights);

// Builds a TreeResult for `edges` measured against the true weights.
TreeResult MakeTreeResult(const WeightAssignment& weights,
                          std::vector<EdgeId> edges, double opt_weight);

enum class WeightDistribution { kUniform01 };

struct GeneratedGraph {
  Graph graph;
  WeightAssignment weights;
};

// Complete graph on n vertices, edges in lexicographic (u, v) order, weights
// drawn i.i.d. from `dist` under `seed`.
GeneratedGraph GenerateCompleteGraph(std::size_t n, std::uint64_t seed,
                                     WeightDistribution dist,
                                     double sensitivity = 1.0);

}  // namespace dpmst

#endif  // DPMST_GRAPH_H_
