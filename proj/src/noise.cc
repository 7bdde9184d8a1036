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

#include "dpmst/noise.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "dpmst/error.h"

namespace dpmst {

Rate::Rate(double rate) : rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kInvalidParam,
                "rate must be finite and positive, got " + std::to_string(rate));
  }
}

double SampleUniform01(RngStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double ExpFromUniform(double u, Rate rate) {
  return -std::log1p(-u) / rate.value();
}

double MaxExpFromUniform(double u, std::int64_t k, Rate rate) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidParam, "MaxExp needs k >= 1");
  }
  // u^(1/k) = exp(ln(u) / k); expm1 keeps 1 - u^(1/k) accurate for large k.
  const double root = std::log(u) / static_cast<double>(k);
  return -std::log(-std::expm1(root)) / rate.value();
}

double SampleExp(RngStream& rng, Rate rate) {
  return ExpFromUniform(SampleUniform01(rng), rate);
}

double SampleMaxExp(RngStream& rng, std::int64_t k, Rate rate) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidParam, "MaxExp needs k >= 1");
  }
  return MaxExpFromUniform(SampleUniform01(rng), k, rate);
}

std::int64_t SampleBinomial(RngStream& rng, std::int64_t trials, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "binomial p outside [0, 1]");
  }
  if (trials < 0) {
    throw Error(ErrorCode::kInvalidParam, "binomial trials must be >= 0");
  }
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - SampleBinomial(rng, trials, 1.0 - p);

  // Failures before each success are Geometric(p); walk success to success.
  const double log_q = std::log1p(-p);
  std::int64_t successes = 0;
  double consumed = 0.0;
  const double limit = static_cast<double>(trials);
  for (;;) {
    const double u = 1.0 - SampleUniform01(rng);  // (0, 1]
    const double gap = std::floor(std::log(u) / log_q);
    consumed += gap + 1.0;
    if (consumed > limit) break;
    ++successes;
  }
  return successes;
}

double SampleGaussian(RngStream& rng, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidParam, "gaussian sigma must be positive");
  }
  std::normal_distribution<double> normal(0.0, sigma);
  return normal(rng);
}

double SampleLaplace(RngStream& rng, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidParam, "laplace scale must be positive");
  }
  // Difference of two Exp(1) values is Laplace(0, 1).
  const double a = -std::log1p(-SampleUniform01(rng));
  const double b = -std::log1p(-SampleUniform01(rng));
  return scale * (a - b);
}

std::uint64_t SampleUniformIndex(RngStream& rng, std::uint64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidParam, "uniform index needs n >= 1");
  }
  if (n == 1) return 0;
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(rng);
}

std::vector<std::uint64_t> SampleDistinctIndices(RngStream& rng,
                                                 std::uint64_t n,
                                                 std::uint64_t k) {
  if (k > n) {
    throw Error(ErrorCode::kInvalidParam, "cannot draw k > n distinct indices");
  }
  std::vector<std::uint64_t> out;
  out.reserve(k);
  if (k == n) {
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = SampleUniformIndex(rng, j + 1);
    const std::uint64_t pick = chosen.contains(t) ? j : t;
    chosen.insert(pick);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dpmst
