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

#include "dpmst/edge_list_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "dpmst/error.h"

namespace dpmst {
namespace {

template <typename T>
T ParseField(std::string_view field, std::size_t line) {
  // Tolerate surrounding blanks and a trailing CR from CRLF files.
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
    field.remove_prefix(1);
  }
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                            field.back() == '\r')) {
    field.remove_suffix(1);
  }
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) +
                                       ": bad field '" + std::string(field) +
                                       "'");
  }
  return value;
}

}  // namespace

void WriteEdgeList(std::ostream& out, const Graph& graph,
                   const WeightAssignment& weights) {
  out << "u,v,w\n";
  std::array<char, 64> buf;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), weights.weight(e));
    out << graph.edge(e).u << ',' << graph.edge(e).v << ','
        << std::string_view(buf.data(), ptr - buf.data()) << '\n';
  }
}

void WriteEdgeListFile(const std::string& path, const Graph& graph,
                       const WeightAssignment& weights) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  WriteEdgeList(out, graph, weights);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

EdgeList ReadEdgeList(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParse, "empty edge list");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,w") {
    throw Error(ErrorCode::kParse, "expected header 'u,v,w', got '" + line + "'");
  }
  std::vector<Edge> edges;
  std::vector<double> weights;
  Vertex max_vertex = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::string_view rest(line);
    const auto c1 = rest.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        rest.find(',', c2 + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const auto u = ParseField<Vertex>(rest.substr(0, c1), line_no);
    const auto v = ParseField<Vertex>(rest.substr(c1 + 1, c2 - c1 - 1), line_no);
    const auto w = ParseField<double>(rest.substr(c2 + 1), line_no);
    edges.push_back({u, v});
    weights.push_back(w);
    max_vertex = std::max({max_vertex, u, v});
  }
  if (edges.empty()) throw Error(ErrorCode::kParse, "edge list has no rows");
  Graph graph = Graph::Create(std::size_t{max_vertex} + 1, std::move(edges));
  return {std::move(graph), std::move(weights)};
}

EdgeList ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadEdgeList(in);
}

}  // namespace dpmst
