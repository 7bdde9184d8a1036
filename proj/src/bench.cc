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

#include "dpmst/bench.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "dpmst/error.h"
#include "dpmst/rng.h"

namespace dpmst {
namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 5> kNames = {{
    {Algorithm::kFastPamst, "fast-pamst"},
    {Algorithm::kPamst, "pamst"},
    {Algorithm::kPostGauss, "post-gauss"},
    {Algorithm::kPostLaplace, "post-laplace"},
    {Algorithm::kExact, "exact"},
}};

std::string Num(double x) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

template <typename T>
T ParseNum(std::string_view field) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw Error(ErrorCode::kParse, "bad CSV field '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitCsv(std::string_view row) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = row.find(',');
    out.push_back(row.substr(0, comma));
    if (comma == std::string_view::npos) break;
    row.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algo) {
  for (const auto& [a, name] : kNames) {
    if (a == algo) return name;
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (const auto& [a, n] : kNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

std::string RunRecordCsvHeader() {
  return "algo,n,m,mode,privacy,sensitivity,seed,tree_weight,opt_weight,error,"
         "elapsed_ns,samples_drawn,comparisons,bottom_hits,utility_bound";
}

std::string ToCsvRow(const RunRecord& r) {
  std::string row;
  row += r.algo + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',';
  row += r.mode == PrivacyMode::kZcdp ? "rho" : "epsilon";
  row += ',' + Num(r.privacy) + ',' + Num(r.sensitivity) + ',' +
         std::to_string(r.seed) + ',' + Num(r.tree_weight) + ',' +
         Num(r.opt_weight) + ',' + Num(r.error) + ',' +
         std::to_string(r.elapsed_ns) + ',' + std::to_string(r.samples_drawn) +
         ',' + std::to_string(r.comparisons) + ',' +
         std::to_string(r.bottom_hits) + ',';
  if (r.utility_bound) row += Num(*r.utility_bound);
  return row;
}

RunRecord ParseRunRecord(std::string_view row) {
  if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
  const auto f = SplitCsv(row);
  if (f.size() != 15) {
    throw Error(ErrorCode::kParse, "run record needs 15 fields, got " +
                                       std::to_string(f.size()));
  }
  RunRecord r;
  r.algo = std::string(f[0]);
  if (!ParseAlgorithm(r.algo)) {
    throw Error(ErrorCode::kParse, "unknown algorithm '" + r.algo + "'");
  }
  r.n = ParseNum<std::size_t>(f[1]);
  r.m = ParseNum<std::size_t>(f[2]);
  if (f[3] == "rho") {
    r.mode = PrivacyMode::kZcdp;
  } else if (f[3] == "epsilon") {
    r.mode = PrivacyMode::kPureDp;
  } else {
    throw Error(ErrorCode::kParse, "unknown privacy mode");
  }
  r.privacy = ParseNum<double>(f[4]);
  r.sensitivity = ParseNum<double>(f[5]);
  r.seed = ParseNum<std::uint64_t>(f[6]);
  r.tree_weight = ParseNum<double>(f[7]);
  r.opt_weight = ParseNum<double>(f[8]);
  r.error = ParseNum<double>(f[9]);
  r.elapsed_ns = ParseNum<std::int64_t>(f[10]);
  r.samples_drawn = ParseNum<std::int64_t>(f[11]);
  r.comparisons = ParseNum<std::int64_t>(f[12]);
  r.bottom_hits = ParseNum<std::int64_t>(f[13]);
  if (!f[14].empty()) r.utility_bound = ParseNum<double>(f[14]);
  if (r.error < r.tree_weight - r.opt_weight - 1e-9 ||
      r.error < -1e-9) {
    throw Error(ErrorCode::kParse, "run record error column is inconsistent");
  }
  return r;
}

RunRecord RunAlgorithm(Algorithm algo, const Graph& graph,
                       const WeightAssignment& weights,
                       const PrivacySpec& spec, std::uint64_t seed) {
  RngStream rng = RngStream(seed).Substream(AlgorithmName(algo));
  TreeResult tree;
  std::optional<double> bound;
  switch (algo) {
    case Algorithm::kFastPamst: {
      PrivateTree out = FastPamst(rng, graph, weights, spec);
      tree = std::move(out.tree);
      bound = out.ledger.utility_bound;
      break;
    }
    case Algorithm::kPamst:
      tree = PamstBaseline(rng, graph, weights, spec).tree;
      break;
    case Algorithm::kPostGauss:
      tree = PostProcessGaussian(rng, graph, weights, spec);
      break;
    case Algorithm::kPostLaplace: {
      PrivacySpec pure = spec;
      if (spec.mode == PrivacyMode::kZcdp) {
        pure = PrivacySpec::PureDp(std::sqrt(2.0 * spec.rho), spec.sensitivity);
      }
      tree = PostProcessLaplace(rng, graph, weights, pure);
      break;
    }
    case Algorithm::kExact:
      spec.Validate();
      tree = ExactMst(graph, weights);
      break;
  }
  RunRecord r;
  r.algo = std::string(AlgorithmName(algo));
  r.n = graph.vertex_count();
  r.m = graph.edge_count();
  r.mode = spec.mode;
  r.privacy = spec.mode == PrivacyMode::kZcdp ? spec.rho : spec.epsilon;
  r.sensitivity = spec.sensitivity;
  r.seed = seed;
  r.tree_weight = tree.true_weight;
  r.opt_weight = tree.opt_weight;
  r.error = tree.error;
  r.elapsed_ns = tree.counters.elapsed_ns;
  r.samples_drawn = tree.counters.samples_drawn;
  r.comparisons = tree.counters.total_comparisons;
  r.bottom_hits = tree.counters.bottom_hits;
  r.utility_bound = bound;
  return r;
}

double Median(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidParam, "median of empty set");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

int ResolveThreadCount() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap = std::getenv("DPMST_THREADS")) {
    int value = 0;
    const std::string_view s(cap);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value >= 1) {
      threads = std::min(threads, value);
    }
  }
  return threads;
}

std::vector<BenchRow> RunBench(const BenchConfig& config) {
  if (config.reps < 1) {
    throw Error(ErrorCode::kInvalidParam, "reps must be >= 1");
  }
  if (config.algos.empty() || config.n_list.empty()) {
    throw Error(ErrorCode::kInvalidParam, "need at least one algo and one n");
  }
  const PrivacySpec spec = PrivacySpec::Zcdp(config.rho, config.sensitivity);
  spec.Validate();

  struct Task {
    Algorithm algo;
    std::size_t n;
    int rep;
  };
  std::vector<Task> tasks;
  for (Algorithm a : config.algos) {
    for (std::size_t n : config.n_list) {
      for (int rep = 0; rep < config.reps; ++rep) tasks.push_back({a, n, rep});
    }
  }

  const RngStream master(config.seed);
  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& t = tasks[i];
        const auto rep = static_cast<std::uint64_t>(t.rep);
        const std::uint64_t graph_seed =
            master.Substream("graph").Substream(t.n).Substream(rep).key();
        const std::uint64_t algo_seed = master.Substream(AlgorithmName(t.algo))
                                            .Substream(t.n)
                                            .Substream(rep)
                                            .key();
        GeneratedGraph g = GenerateCompleteGraph(
            t.n, graph_seed, WeightDistribution::kUniform01, config.sensitivity);
        records[i] = RunAlgorithm(t.algo, g.graph, g.weights, spec, algo_seed);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads,
                                                static_cast<int>(tasks.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> rows;
  std::size_t i = 0;
  for (Algorithm a : config.algos) {
    for (std::size_t n : config.n_list) {
      std::vector<double> error, elapsed, samples, comparisons, hits;
      std::optional<double> bound;
      for (int rep = 0; rep < config.reps; ++rep, ++i) {
        const RunRecord& r = records[i];
        error.push_back(r.error);
        elapsed.push_back(static_cast<double>(r.elapsed_ns));
        samples.push_back(static_cast<double>(r.samples_drawn));
        comparisons.push_back(static_cast<double>(r.comparisons));
        hits.push_back(static_cast<double>(r.bottom_hits));
        bound = r.utility_bound;
      }
      BenchRow row;
      row.algo = std::string(AlgorithmName(a));
      row.n = n;
      row.reps = config.reps;
      row.rho = config.rho;
      row.sensitivity = config.sensitivity;
      row.median_error = Median(error);
      row.median_elapsed_ns = Median(elapsed);
      row.median_samples = Median(samples);
      row.median_comparisons = Median(comparisons);
      row.median_bottom_hits = Median(hits);
      row.utility_bound = bound;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string BenchCsvHeader() {
  return "algo,n,reps,rho,sensitivity,median_error,median_elapsed_ns,"
         "median_samples,median_comparisons,median_bottom_hits,utility_bound";
}

std::string ToCsvRow(const BenchRow& r) {
  std::string row = r.algo + ',' + std::to_string(r.n) + ',' +
                    std::to_string(r.reps) + ',' + Num(r.rho) + ',' +
                    Num(r.sensitivity) + ',' + Num(r.median_error) + ',' +
                    Num(r.median_elapsed_ns) + ',' + Num(r.median_samples) +
                    ',' + Num(r.median_comparisons) + ',' +
                    Num(r.median_bottom_hits) + ',';
  if (r.utility_bound) row += Num(*r.utility_bound);
  return row;
}

}  // namespace dpmst
