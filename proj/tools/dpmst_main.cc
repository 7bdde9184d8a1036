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

// Command-line front end: graph generation, single runs, and benchmarks.
// Exit codes: 0 success, 2 usage error, 3 data or I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpmst/bench.h"
#include "dpmst/edge_list_io.h"
#include "dpmst/error.h"
#include "dpmst/graph.h"

namespace {

constexpr int kUsageError = 2;
constexpr int kDataError = 3;

int Gen(std::size_t n, std::uint64_t seed, const std::string& out) {
  dpmst::GeneratedGraph g = dpmst::GenerateCompleteGraph(
      n, seed, dpmst::WeightDistribution::kUniform01);
  if (out == "-") {
    dpmst::WriteEdgeList(std::cout, g.graph, g.weights);
  } else {
    dpmst::WriteEdgeListFile(out, g.graph, g.weights);
  }
  return 0;
}

int Run(const std::string& algo_name, const std::string& graph_path,
        std::optional<double> rho, std::optional<double> epsilon,
        double sensitivity, std::uint64_t seed, const std::string& out) {
  const auto algo = dpmst::ParseAlgorithm(algo_name);
  if (!algo) {
    std::cerr << "unknown algorithm: " << algo_name << "\n";
    return kUsageError;
  }
  if (rho.has_value() == epsilon.has_value()) {
    std::cerr << "give exactly one of --rho or --epsilon\n";
    return kUsageError;
  }
  const dpmst::PrivacySpec spec =
      rho ? dpmst::PrivacySpec::Zcdp(*rho, sensitivity)
          : dpmst::PrivacySpec::PureDp(*epsilon, sensitivity);
  dpmst::EdgeList input = dpmst::ReadEdgeListFile(graph_path);
  dpmst::WeightAssignment weights = dpmst::WeightAssignment::Create(
      input.graph, std::move(input.weights), sensitivity);
  const dpmst::RunRecord record =
      dpmst::RunAlgorithm(*algo, input.graph, weights, spec, seed);
  if (out == "-") {
    std::cout << dpmst::RunRecordCsvHeader() << "\n"
              << dpmst::ToCsvRow(record) << "\n";
    return 0;
  }
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(out, ec) ||
                     std::filesystem::file_size(out, ec) == 0;
  std::ofstream file(out, std::ios::app);
  if (!file) throw dpmst::Error(dpmst::ErrorCode::kIo, "cannot open " + out);
  if (fresh) file << dpmst::RunRecordCsvHeader() << "\n";
  file << dpmst::ToCsvRow(record) << "\n";
  if (!file) throw dpmst::Error(dpmst::ErrorCode::kIo, "write failed: " + out);
  return 0;
}

int Bench(const std::vector<std::string>& algo_names,
          const std::vector<std::size_t>& n_list, int reps, double rho,
          double sensitivity, std::uint64_t seed, const std::string& out) {
  dpmst::BenchConfig config;
  for (const std::string& name : algo_names) {
    const auto algo = dpmst::ParseAlgorithm(name);
    if (!algo) {
      std::cerr << "unknown algorithm: " << name << "\n";
      return kUsageError;
    }
    config.algos.push_back(*algo);
  }
  config.n_list = n_list;
  config.reps = reps;
  config.rho = rho;
  config.sensitivity = sensitivity;
  config.seed = seed;
  config.threads = dpmst::ResolveThreadCount();
  const std::vector<dpmst::BenchRow> rows = dpmst::RunBench(config);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (out != "-") {
    file.open(out);
    if (!file) throw dpmst::Error(dpmst::ErrorCode::kIo, "cannot open " + out);
    os = &file;
  }
  *os << dpmst::BenchCsvHeader() << "\n";
  for (const auto& row : rows) *os << dpmst::ToCsvRow(row) << "\n";
  if (!*os) throw dpmst::Error(dpmst::ErrorCode::kIo, "write failed: " + out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private minimum spanning trees"};
  app.require_subcommand(1);

  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_dist = "uniform01";
  std::string gen_out = "-";
  CLI::App* gen = app.add_subcommand("gen", "Write a random complete graph");
  gen->add_option("--n", gen_n, "Vertex count")->required()->check(
      CLI::Range(std::size_t{2}, std::size_t{1} << 16));
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--dist", gen_dist, "Weight distribution")
      ->check(CLI::IsMember({"uniform01"}));
  gen->add_option("--out", gen_out, "Output CSV, '-' for stdout");

  std::string run_algo;
  std::string run_graph;
  std::optional<double> run_rho;
  std::optional<double> run_eps;
  double run_sens = 1e-5;
  std::uint64_t run_seed = 0;
  std::string run_out = "-";
  CLI::App* run = app.add_subcommand("run", "Run one algorithm on a graph");
  run->add_option("--algo", run_algo, "fast-pamst|pamst|post-gauss|post-laplace|exact")
      ->required();
  run->add_option("--graph", run_graph, "Edge-list CSV")->required();
  run->add_option("--rho", run_rho, "zCDP budget");
  run->add_option("--epsilon", run_eps, "Pure DP budget");
  run->add_option("--sensitivity", run_sens, "Per-edge sensitivity");
  run->add_option("--seed", run_seed, "Seed");
  run->add_option("--out", run_out, "Append a row to this CSV, '-' for stdout");

  std::vector<std::string> bench_algos;
  std::vector<std::size_t> bench_n;
  int bench_reps = 5;
  double bench_rho = 0.1;
  double bench_sens = 1e-5;
  std::uint64_t bench_seed = 0;
  std::string bench_out = "-";
  CLI::App* bench = app.add_subcommand("bench", "Benchmark on random graphs");
  bench->add_option("--algos", bench_algos, "Algorithms")->required()
      ->delimiter(',');
  bench->add_option("--n-list", bench_n, "Vertex counts")->required()
      ->delimiter(',');
  bench->add_option("--reps", bench_reps, "Repetitions")->check(
      CLI::PositiveNumber);
  bench->add_option("--rho", bench_rho, "zCDP budget");
  bench->add_option("--sensitivity", bench_sens, "Per-edge sensitivity");
  bench->add_option("--seed", bench_seed, "Master seed");
  bench->add_option("--out", bench_out, "Output CSV, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) return Gen(gen_n, gen_seed, gen_out);
    if (*run) {
      return Run(run_algo, run_graph, run_rho, run_eps, run_sens, run_seed,
                 run_out);
    }
    return Bench(bench_algos, bench_n, bench_reps, bench_rho, bench_sens,
                 bench_seed, bench_out);
  } catch (const dpmst::Error& e) {
    std::cerr << "error [" << dpmst::ErrorCodeName(e.code()) << "]: "
              << e.what() << "\n";
    return e.code() == dpmst::ErrorCode::kInvalidParam ? kUsageError
                                                       : kDataError;
  }
}
