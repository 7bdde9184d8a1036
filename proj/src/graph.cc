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

#include "dpmst/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "disjoint_sets.h"
#include "dpmst/error.h"
#include "dpmst/noise.h"
#include "dpmst/rng.h"

namespace dpmst {

Graph Graph::Create(std::size_t vertex_count, std::vector<Edge> edges) {
  if (vertex_count < 2) {
    throw Error(ErrorCode::kInvalidParam, "graph needs at least 2 vertices");
  }
  if (edges.size() > std::size_t{0xffffffffu}) {
    throw Error(ErrorCode::kInvalidParam, "too many edges for 32-bit ids");
  }
  for (Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw Error(ErrorCode::kInvalidParam,
                  "edge endpoint out of range: (" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + ")");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidParam,
                  "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }

  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      dup != sorted.end()) {
    throw Error(ErrorCode::kInvalidParam,
                "duplicate edge (" + std::to_string(dup->u) + "," +
                    std::to_string(dup->v) + ")");
  }

  Graph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  g.offsets_.assign(vertex_count + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.incident_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    g.incident_[fill[g.edges_[id].u]++] = id;
    g.incident_[fill[g.edges_[id].v]++] = id;
  }
  return g;
}

bool Graph::IsConnected() const {
  std::vector<char> seen(vertex_count_, 0);
  std::vector<Vertex> stack = {0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident(v)) {
      const Vertex w = Other(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertex_count_;
}

WeightAssignment WeightAssignment::Create(const Graph& graph,
                                          std::vector<double> weights,
                                          double sensitivity) {
  if (weights.size() != graph.edge_count()) {
    throw Error(ErrorCode::kInvalidParam,
                "expected " + std::to_string(graph.edge_count()) +
                    " weights, got " + std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidParam, "edge weight is not finite");
    }
  }
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw Error(ErrorCode::kInvalidParam, "sensitivity must be positive");
  }
  return WeightAssignment(std::move(weights), sensitivity);
}

double TreeWeight(const WeightAssignment& weights,
                  std::span<const EdgeId> edge_ids) {
  double total = 0.0;
  for (EdgeId e : edge_ids) {
    if (e >= weights.size()) {
      throw Error(ErrorCode::kUnknownEdge, "edge id " + std::to_string(e));
    }
    total += weights.weight(e);
  }
  return total;
}

bool IsSpanningTree(const Graph& graph, std::span<const EdgeId> edge_ids) {
  const std::size_t n = graph.vertex_count();
  if (edge_ids.size() != n - 1) return false;
  internal::DisjointSets sets(n);
  for (EdgeId e : edge_ids) {
    if (e >= graph.edge_count()) return false;
    if (!sets.Union(graph.edge(e).u, graph.edge(e).v)) return false;
  }
  // n - 1 successful unions over n vertices leave a single component.
  return true;
}

std::vector<EdgeId> MinimumSpanningTreeEdges(const Graph& graph,
                                             std::span<const double> weights) {
  const std::size_t n = graph.vertex_count();
  std::vector<EdgeId> order(graph.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return weights[a] != weights[b] ? weights[a] < weights[b] : a < b;
  });
  internal::DisjointSets sets(n);
  std::vector<EdgeId> tree;
  tree.reserve(n - 1);
  for (EdgeId e : order) {
    if (sets.Union(graph.edge(e).u, graph.edge(e).v)) {
      tree.push_back(e);
      if (tree.size() == n - 1) break;
    }
  }
  if (tree.size() != n - 1) {
    throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

TreeResult MakeTreeResult(const WeightAssignment& weights,
                          std::vector<EdgeId> edges, double opt_weight) {
  std::sort(edges.begin(), edges.end());
  TreeResult result;
  result.true_weight = TreeWeight(weights, edges);
  result.tree_edges = std::move(edges);
  result.opt_weight = opt_weight;
  result.error = result.true_weight - opt_weight;
  return result;
}

TreeResult ExactMst(const Graph& graph, const WeightAssignment& weights) {
  std::vector<EdgeId> edges = MinimumSpanningTreeEdges(graph, weights.weights());
  const double w = TreeWeight(weights, edges);
  TreeResult result = MakeTreeResult(weights, std::move(edges), w);
  result.error = 0.0;
  return result;
}

GeneratedGraph GenerateCompleteGraph(std::size_t n, std::uint64_t seed,
                                     WeightDistribution dist,
                                     double sensitivity) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParam, "complete graph needs n >= 2");
  }
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  RngStream rng(seed);
  std::vector<double> weights(edges.size());
  switch (dist) {
    case WeightDistribution::kUniform01:
      for (double& w : weights) w = SampleUniform01(rng);
      break;
  }
  Graph graph = Graph::Create(n, std::move(edges));
  WeightAssignment wa =
      WeightAssignment::Create(graph, std::move(weights), sensitivity);
  return {std::move(graph), std::move(wa)};
}

}  // namespace dpmst
