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

#ifndef DPMST_BENCH_H_
#define DPMST_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpmst/graph.h"
#include "dpmst/private_mst.h"

namespace dpmst {

enum class Algorithm { kFastPamst, kPamst, kPostGauss, kPostLaplace, kExact };

std::string_view AlgorithmName(Algorithm algo);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

// One algorithm run. `privacy` is rho when mode is kZcdp, epsilon otherwise.
struct RunRecord {
  std::string algo;
  std::size_t n = 0;
  std::size_t m = 0;
  PrivacyMode mode = PrivacyMode::kZcdp;
  double privacy = 0.0;
  double sensitivity = 0.0;
  std::uint64_t seed = 0;
  double tree_weight = 0.0;
  double opt_weight = 0.0;
  double error = 0.0;
  std::int64_t elapsed_ns = 0;
  std::int64_t samples_drawn = 0;
  std::int64_t comparisons = 0;
  std::int64_t bottom_hits = 0;
  std::optional<double> utility_bound;
};

// Header line without the trailing newline.
std::string RunRecordCsvHeader();
std::string ToCsvRow(const RunRecord& record);
// Throws Parse on malformed rows.
RunRecord ParseRunRecord(std::string_view row);

// Runs `algo` with randomness derived from `seed`. Post-Laplace under a zCDP
// spec uses epsilon = sqrt(2 rho), which is rho-zCDP; post-Gauss requires a
// zCDP spec.
RunRecord RunAlgorithm(Algorithm algo, const Graph& graph,
                       const WeightAssignment& weights,
                       const PrivacySpec& spec, std::uint64_t seed);

struct BenchConfig {
  std::vector<Algorithm> algos;
  std::vector<std::size_t> n_list;
  int reps = 5;
  double rho = 0.1;
  double sensitivity = 1e-5;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BenchRow {
  std::string algo;
  std::size_t n = 0;
  int reps = 0;
  double rho = 0.0;
  double sensitivity = 0.0;
  double median_error = 0.0;
  double median_elapsed_ns = 0.0;
  double median_samples = 0.0;
  double median_comparisons = 0.0;
  double median_bottom_hits = 0.0;
  std::optional<double> utility_bound;  // fast-pamst rows only
};

// Every (algo, n, rep) gets its own graph and algorithm substreams of the
// master seed; the graph for (n, rep) is shared by all algorithms. Rows come
// back in (algo, n) order regardless of thread count.
std::vector<BenchRow> RunBench(const BenchConfig& config);

std::string BenchCsvHeader();
std::string ToCsvRow(const BenchRow& row);

// Worker count: hardware concurrency capped by DPMST_THREADS when set.
int ResolveThreadCount();

double Median(std::vector<double> values);

}  // namespace dpmst

#endif  // DPMST_BENCH_H_
