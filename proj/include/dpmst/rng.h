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

#ifndef DPMST_RNG_H_
#define DPMST_RNG_H_

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace dpmst {

// Seeded 64-bit generator with labeled substreams. A substream depends only
// on the parent's key and the label, never on how many values the parent has
// produced, so adding draws to one stream leaves its siblings unchanged.
//
// Satisfies UniformRandomBitGenerator. Single owner; not thread safe.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : key_(seed), engine_(Mix(seed)) {}

  RngStream Substream(std::string_view label) const;
  RngStream Substream(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  static std::uint64_t Mix(std::uint64_t x);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace dpmst

#endif  // DPMST_RNG_H_
