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

#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include "dpmst/bench.h"
#include "dpmst/error.h"
#include "dpmst/graph.h"

namespace dpmst {
namespace {

TEST(AlgorithmNameTest, RoundTrips) {
  for (Algorithm a : {Algorithm::kFastPamst, Algorithm::kPamst, Algorithm::kPostGauss,
                      Algorithm::kPostLaplace, Algorithm::kExact}) {
    EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  }
  EXPECT_FALSE(ParseAlgorithm("prim").has_value());
}

TEST(RunRecordTest, CsvRoundTrip) {
  const GeneratedGraph gg = GenerateCompleteGraph(20, 1, WeightDistribution::kUniform01, 1e-5);
  const RunRecord r = RunAlgorithm(Algorithm::kFastPamst, gg.graph, gg.weights,
                                   PrivacySpec::Zcdp(0.1, 1e-5), 42);
  EXPECT_EQ(r.n, 20u);
  EXPECT_EQ(r.m, 190u);
  ASSERT_TRUE(r.utility_bound.has_value());
  const RunRecord back = ParseRunRecord(ToCsvRow(r));
  EXPECT_EQ(back.algo, r.algo);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.tree_weight, r.tree_weight);
  EXPECT_EQ(back.error, r.error);
  EXPECT_EQ(back.samples_drawn, r.samples_drawn);
  EXPECT_EQ(back.utility_bound, r.utility_bound);
  EXPECT_EQ(ToCsvRow(back), ToCsvRow(r));
}

TEST(RunRecordTest, RejectsMalformedRows) {
  EXPECT_THROW(ParseRunRecord("fast-pamst,1,2"), Error);
  EXPECT_THROW(ParseRunRecord("nope,3,3,rho,0.1,1e-05,0,1,1,0,1,1,1,0,"), Error);
  EXPECT_THROW(ParseRunRecord("exact,3,3,zeta,0.1,1e-05,0,1,1,0,1,1,1,0,"), Error);
  EXPECT_THROW(ParseRunRecord("exact,3,3,rho,x,1e-05,0,1,1,0,1,1,1,0,"), Error);
  EXPECT_NO_THROW(ParseRunRecord("exact,3,3,rho,0.1,1e-05,0,1,1,0,1,1,1,0,"));
}

TEST(RunAlgorithmTest, EveryAlgorithmReturnsSpanningTreeWeight) {
  const GeneratedGraph gg = GenerateCompleteGraph(30, 2, WeightDistribution::kUniform01, 1e-5);
  const double opt = ExactMst(gg.graph, gg.weights).true_weight;
  for (Algorithm a : {Algorithm::kFastPamst, Algorithm::kPamst, Algorithm::kPostGauss,
                      Algorithm::kPostLaplace, Algorithm::kExact}) {
    const RunRecord r = RunAlgorithm(a, gg.graph, gg.weights, PrivacySpec::Zcdp(0.1, 1e-5), 7);
    EXPECT_EQ(r.opt_weight, opt);
    EXPECT_GE(r.error, 0.0);
    EXPECT_NEAR(r.tree_weight - r.opt_weight, r.error, 1e-12);
  }
  EXPECT_THROW(RunAlgorithm(Algorithm::kPostGauss, gg.graph, gg.weights,
                            PrivacySpec::PureDp(1, 1e-5), 7),
               Error);
}

TEST(MedianTest, OddEvenAndEmpty) {
  EXPECT_EQ(Median({3, 1, 2}), 2);
  EXPECT_EQ(Median({4, 1, 3, 2}), 2.5);
  EXPECT_THROW(Median({}), Error);
}

TEST(RunBenchTest, DeterministicAcrossThreadCounts) {
  BenchConfig c;
  c.algos = {Algorithm::kFastPamst, Algorithm::kPostGauss};
  c.n_list = {16, 32};
  c.reps = 3;
  c.seed = 5;
  c.threads = 1;
  const auto one = RunBench(c);
  c.threads = 3;
  const auto three = RunBench(c);
  ASSERT_EQ(one.size(), 4u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].algo, three[i].algo);
    EXPECT_EQ(one[i].n, three[i].n);
    EXPECT_EQ(one[i].median_error, three[i].median_error);
    EXPECT_EQ(one[i].median_samples, three[i].median_samples);
  }
  EXPECT_EQ(one[0].algo, "fast-pamst");
  EXPECT_TRUE(one[0].utility_bound.has_value());
  EXPECT_FALSE(one[2].utility_bound.has_value());
  EXPECT_GT(one[3].median_error, one[1].median_error);
}

TEST(RunBenchTest, SingleCellGivesOneRow) {
  BenchConfig c;
  c.algos = {Algorithm::kExact};
  c.n_list = {10};
  c.reps = 1;
  const auto rows = RunBench(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].median_error, 0.0);
  EXPECT_EQ(ToCsvRow(rows[0]).substr(0, 9), "exact,10,");
}

TEST(RunAlgorithmTest, SameSeedSameRowApartFromTime) {
  const GeneratedGraph gg = GenerateCompleteGraph(40, 9, WeightDistribution::kUniform01, 1e-5);
  RunRecord a = RunAlgorithm(Algorithm::kFastPamst, gg.graph, gg.weights,
                             PrivacySpec::Zcdp(0.1, 1e-5), 3);
  RunRecord b = RunAlgorithm(Algorithm::kFastPamst, gg.graph, gg.weights,
                             PrivacySpec::Zcdp(0.1, 1e-5), 3);
  a.elapsed_ns = b.elapsed_ns = 0;
  EXPECT_EQ(ToCsvRow(a), ToCsvRow(b));
  EXPECT_LE(a.error, *a.utility_bound);
}

TEST(RunBenchTest, RejectsEmptyConfig) {
  BenchConfig c;
  EXPECT_THROW(RunBench(c), Error);
  c.algos = {Algorithm::kExact};
  c.n_list = {8};
  c.reps = 0;
  EXPECT_THROW(RunBench(c), Error);
}

TEST(ThreadCountTest, HonorsEnvironmentCap) {
  setenv("DPMST_THREADS", "1", 1);
  EXPECT_EQ(ResolveThreadCount(), 1);
  unsetenv("DPMST_THREADS");
  EXPECT_GE(ResolveThreadCount(), 1);
}

}  // namespace
}  // namespace dpmst
