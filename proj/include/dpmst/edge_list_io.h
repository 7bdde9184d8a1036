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

#ifndef DPMST_EDGE_LIST_IO_H_
#define DPMST_EDGE_LIST_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dpmst/graph.h"

namespace dpmst {

// CSV edge list: header `u,v,w`, 0-based integer vertex ids, one row per
// undirected edge. Weights are written in shortest round-trip form so a
// read reproduces them bit for bit.
void WriteEdgeList(std::ostream& out, const Graph& graph,
                   const WeightAssignment& weights);
void WriteEdgeListFile(const std::string& path, const Graph& graph,
                       const WeightAssignment& weights);

struct EdgeList {
  Graph graph;
  std::vector<double> weights;  // indexed by edge id (file row order)
};

// Vertex count is one more than the largest id seen. Throws Parse on
// malformed rows and InvalidParam on invalid topology.
EdgeList ReadEdgeList(std::istream& in);
EdgeList ReadEdgeListFile(const std::string& path);

}  // namespace dpmst

#endif  // DPMST_EDGE_LIST_IO_H_
