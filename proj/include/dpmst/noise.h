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

#ifndef DPMST_NOISE_H_
#define DPMST_NOISE_H_

#include <cstdint>
#include <vector>

#include "dpmst/rng.h"

namespace dpmst {

// Rate of an exponential distribution: Exp(rate) has CDF 1 - exp(-rate * x)
// and mean 1 / rate. Finite and strictly positive.
class Rate {
 public:
  // Throws InvalidParam unless 0 < rate < inf.
  explicit Rate(double rate);

  double value() const { return rate_; }

 private:
  double rate_;
};

// Uniform on [0, 1) with 53 random bits; identical on every platform.
double SampleUniform01(RngStream& rng);

// Inverse transforms, exposed for deterministic tests. `u` is in [0, 1).
double ExpFromUniform(double u, Rate rate);
double MaxExpFromUniform(double u, std::int64_t k, Rate rate);

double SampleExp(RngStream& rng, Rate rate);

// Maximum of k i.i.d. Exp(rate) values from a single uniform draw.
// Throws InvalidParam if k < 1.
double SampleMaxExp(RngStream& rng, std::int64_t k, Rate rate);

// Exact Binomial(trials, p) by skipping geometric gaps between successes;
// expected work O(trials * min(p, 1 - p) + 1).
std::int64_t SampleBinomial(RngStream& rng, std::int64_t trials, double p);

double SampleGaussian(RngStream& rng, double sigma);
double SampleLaplace(RngStream& rng, double scale);

// Unbiased uniform integer in [0, n). Throws InvalidParam if n < 1.
std::uint64_t SampleUniformIndex(RngStream& rng, std::uint64_t n);

// Uniform k-subset of [0, n) in ascending order, O(k) expected time
// (Floyd's algorithm). Throws InvalidParam if k > n.
std::vector<std::uint64_t> SampleDistinctIndices(RngStream& rng,
                                                 std::uint64_t n,
                                                 std::uint64_t k);

}  // namespace dpmst

#endif  // DPMST_NOISE_H_
