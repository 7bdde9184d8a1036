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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <gtest/gtest.h>

#include "dpmst/error.h"
#include "dpmst/noise.h"
#include "dpmst/rng.h"
#include "stat_util.h"

namespace dpmst {
namespace {

using testing::ChiSquarePValue;
using testing::KsPValue;
using testing::KsStatistic;
using testing::KsTwoSamplePValue;

constexpr double kAlpha = 1e-3;

template <typename F>
std::vector<double> Draw(std::uint64_t seed, int count, F&& f) {
  RngStream rng(seed);
  std::vector<double> out(count);
  for (double& x : out) x = f(rng);
  return out;
}

double Mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double Variance(const std::vector<double>& xs) {
  const double mu = Mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return s / static_cast<double>(xs.size() - 1);
}

TEST(RngStreamTest, ReplaysAndSplits) {
  RngStream a(9), b(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  RngStream c(9);
  const RngStream x = c.Substream("x");
  c();  // advancing the parent does not change its substreams
  EXPECT_EQ(c.Substream("x").key(), x.key());
  EXPECT_NE(c.Substream("x").key(), c.Substream("y").key());
  EXPECT_NE(c.Substream(std::uint64_t{0}).key(),
            c.Substream(std::uint64_t{1}).key());
  RngStream s1 = c.Substream("x"), s2 = c.Substream("y");
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += (s1() == s2());
  EXPECT_EQ(equal, 0);
}

TEST(RateTest, RejectsNonPositive) {
  EXPECT_THROW(Rate{0.0}, Error);
  EXPECT_THROW(Rate{-1.0}, Error);
  EXPECT_THROW(Rate{INFINITY}, Error);
  EXPECT_THROW(Rate{NAN}, Error);
  EXPECT_EQ(Rate(2.5).value(), 2.5);
}

TEST(UniformTest, MomentsAndKs) {
  const auto u = Draw(1, 1'000'000, [](RngStream& r) { return SampleUniform01(r); });
  EXPECT_NEAR(Mean(u), 0.5, 0.002);
  EXPECT_LT(KsStatistic(u, [](double x) { return x; }), 0.002);
  for (double x : u) {
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  RngStream r1(77), r2(77);
  EXPECT_EQ(SampleUniform01(r1), SampleUniform01(r2));
}

TEST(ExpTest, InverseTransformExamples) {
  EXPECT_NEAR(ExpFromUniform(1.0 - std::exp(-2.0), Rate(1.0)), 2.0, 1e-12);
  EXPECT_EQ(ExpFromUniform(0.0, Rate(1.0)), 0.0);
  EXPECT_NEAR(ExpFromUniform(0.5, Rate(4.0)), std::log(2.0) / 4.0, 1e-15);
}

TEST(ExpTest, MeanAndKs) {
  const auto x = Draw(2, 1'000'000, [](RngStream& r) { return SampleExp(r, Rate(1.0)); });
  EXPECT_NEAR(Mean(x), 1.0, 0.005);
  const auto y = Draw(3, 100'000, [](RngStream& r) { return SampleExp(r, Rate(3.0)); });
  EXPECT_GT(KsPValue(KsStatistic(y, [](double t) { return 1 - std::exp(-3 * t); }),
                     y.size()),
            kAlpha);
}

TEST(MaxExpTest, InverseTransformExample) {
  const double u = std::pow(1.0 - std::exp(-1.0), 4);
  EXPECT_NEAR(MaxExpFromUniform(u, 4, Rate(1.0)), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(MaxExpFromUniform(0.3, 1, Rate(2.0)),
                   ExpFromUniform(0.3, Rate(2.0)));
  RngStream rng(1);
  EXPECT_THROW(SampleMaxExp(rng, 0, Rate(1.0)), Error);
}

TEST(MaxExpTest, SingleMemberMatchesExp) {
  const auto a = Draw(4, 100'000, [](RngStream& r) { return SampleMaxExp(r, 1, Rate(1.0)); });
  const auto b = Draw(4, 100'000, [](RngStream& r) { return SampleExp(r, Rate(1.0)); });
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_NEAR(a[i], b[i], 1e-9 * (1.0 + b[i]));
  }
  EXPECT_GT(KsTwoSamplePValue(a, b), kAlpha);
}

TEST(MaxExpTest, ClosedFormCdfForLargeK) {
  const auto x = Draw(5, 100'000, [](RngStream& r) { return SampleMaxExp(r, 1000, Rate(1.0)); });
  const double d = KsStatistic(x, [](double t) {
    return std::exp(1000.0 * std::log1p(-std::exp(-t)));
  });
  EXPECT_LT(d, 0.01);
}

TEST(MaxExpTest, MatchesMaximumOfIndependentDraws) {
  const std::vector<std::pair<int, double>> cases = {{2, 1.0}, {10, 0.5}, {100, 2.0}};
  std::uint64_t seed = 10;
  for (const auto& [k, lambda] : cases) {
    const Rate rate(lambda);
    const auto fast = Draw(seed++, 100'000, [&](RngStream& r) {
      return SampleMaxExp(r, k, rate);
    });
    const auto slow = Draw(seed++, 100'000, [&](RngStream& r) {
      double m = 0.0;
      for (int i = 0; i < k; ++i) m = std::max(m, SampleExp(r, rate));
      return m;
    });
    EXPECT_GT(KsTwoSamplePValue(fast, slow), kAlpha) << "k=" << k;
  }
}

TEST(BinomialTest, Degenerate) {
  RngStream rng(6);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SampleBinomial(rng, 50, 0.0), 0);
    EXPECT_EQ(SampleBinomial(rng, 50, 1.0), 50);
    EXPECT_EQ(SampleBinomial(rng, 0, 0.3), 0);
  }
  EXPECT_THROW(SampleBinomial(rng, 5, -0.1), Error);
  EXPECT_THROW(SampleBinomial(rng, 5, 1.1), Error);
  EXPECT_THROW(SampleBinomial(rng, -1, 0.5), Error);
}

TEST(BinomialTest, RareEventMoments) {
  const auto k = Draw(7, 100'000, [](RngStream& r) {
    return static_cast<double>(SampleBinomial(r, 1'000'000, 1e-5));
  });
  EXPECT_NEAR(Mean(k), 10.0, 0.1);
  EXPECT_NEAR(Variance(k), 10.0, 1.0);
}

TEST(BinomialTest, HistogramMatchesPmf) {
  const std::vector<std::pair<std::int64_t, double>> cases = {
      {20, 0.3}, {100, 0.05}, {40, 0.8}, {1000, 0.5}};
  std::uint64_t seed = 20;
  for (const auto& [trials, p] : cases) {
    RngStream rng(seed++);
    std::vector<double> observed(trials + 1, 0.0);
    for (int i = 0; i < 100'000; ++i) observed[SampleBinomial(rng, trials, p)] += 1;
    boost::math::binomial dist(static_cast<double>(trials), p);
    std::vector<double> pmf(trials + 1);
    for (std::int64_t j = 0; j <= trials; ++j) pmf[j] = boost::math::pdf(dist, j);
    EXPECT_GT(ChiSquarePValue(observed, pmf), kAlpha)
        << "trials=" << trials << " p=" << p;
  }
}

TEST(GaussianTest, MomentsAndKs) {
  const auto x = Draw(8, 1'000'000, [](RngStream& r) { return SampleGaussian(r, 1.0); });
  EXPECT_NEAR(Mean(x), 0.0, 0.005);
  EXPECT_NEAR(Variance(x), 1.0, 0.01);
  EXPECT_LT(KsStatistic(x, [](double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }),
            0.002);
  RngStream rng(1);
  EXPECT_THROW(SampleGaussian(rng, 0.0), Error);
  EXPECT_EQ(Draw(9, 10, [](RngStream& r) { return SampleGaussian(r, 2.0); }),
            Draw(9, 10, [](RngStream& r) { return SampleGaussian(r, 2.0); }));
}

TEST(LaplaceTest, MomentsAndMedian) {
  auto x = Draw(10, 1'000'000, [](RngStream& r) { return SampleLaplace(r, 1.0); });
  EXPECT_NEAR(Mean(x), 0.0, 0.01);
  EXPECT_NEAR(Variance(x), 2.0, 0.04);
  std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
  EXPECT_NEAR(x[x.size() / 2], 0.0, 0.01);
  RngStream rng(1);
  EXPECT_THROW(SampleLaplace(rng, -1.0), Error);
  EXPECT_EQ(Draw(11, 10, [](RngStream& r) { return SampleLaplace(r, 3.0); }),
            Draw(11, 10, [](RngStream& r) { return SampleLaplace(r, 3.0); }));
}

TEST(UniformIndexTest, Unbiased) {
  RngStream rng(12);
  EXPECT_EQ(SampleUniformIndex(rng, 1), 0u);
  EXPECT_THROW(SampleUniformIndex(rng, 0), Error);
  std::vector<double> count(6, 0.0);
  for (int i = 0; i < 600'000; ++i) count[SampleUniformIndex(rng, 6)] += 1;
  for (double c : count) EXPECT_NEAR(c, 100'000, 1'000);
}

TEST(DistinctIndicesTest, EdgeCasesAndUniformPairs) {
  RngStream rng(13);
  EXPECT_TRUE(SampleDistinctIndices(rng, 10, 0).empty());
  const auto all = SampleDistinctIndices(rng, 7, 7);
  EXPECT_EQ(all, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_THROW(SampleDistinctIndices(rng, 3, 4), Error);
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> pairs;
  for (int i = 0; i < 100'000; ++i) {
    const auto s = SampleDistinctIndices(rng, 5, 2);
    ASSERT_EQ(s.size(), 2u);
    ASSERT_LT(s[0], s[1]);
    pairs[{s[0], s[1]}] += 1;
  }
  ASSERT_EQ(pairs.size(), 10u);
  for (const auto& [p, c] : pairs) EXPECT_NEAR(c, 10'000, 300);
}

TEST(DistinctIndicesTest, LargeUniverseStaysDistinct) {
  RngStream rng(14);
  const auto s = SampleDistinctIndices(rng, std::uint64_t{1} << 40, 1000);
  EXPECT_EQ(std::set<std::uint64_t>(s.begin(), s.end()).size(), 1000u);
}

}  // namespace
}  // namespace dpmst
