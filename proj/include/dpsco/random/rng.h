// Copyright 2026 The dpsco Authors.
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

#ifndef DPSCO_RANDOM_RNG_H_
#define DPSCO_RANDOM_RNG_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace dpsco {

// The Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3"). Maps a 128-bit counter and 64-bit key to 128 bits.
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

// Seeded random stream built on Philox4x32-10. The stream for a given
// (seed, stream id) is fully specified by this file: block i of the stream
// is Philox4x32({i_lo, i_hi, stream_lo, stream_hi}, {seed_lo, seed_hi}), and
// all derived variates below use only integer arithmetic and <cmath>.
//
// Not thread-safe; give each worker its own Rng.
class Rng {
 public:
  // Recorded in every run manifest and CSV. Bump the version suffix whenever
  // the mapping from (seed, stream) to variates changes.
  static constexpr std::string_view kGeneratorId = "philox4x32-10/dpsco-v1";

  explicit Rng(uint64_t seed, uint64_t stream = 0);

  uint32_t NextU32();
  uint64_t NextU64();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on (0, 1).
  double UniformOpen();
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformInt(uint64_t bound);

  // Standard normal via Box-Muller; variates are produced in pairs.
  double Normal();

  // Gamma(shape, 1) via Marsaglia-Tsang, with the U^(1/shape) boost for
  // shape < 1.
  double Gamma(double shape);

  // Independent stream sharing this seed.
  Rng Fork(uint64_t stream) const { return Rng(seed_, stream); }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  void Refill();

  uint64_t seed_;
  uint64_t stream_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
  std::optional<double> spare_normal_;
};

}  // namespace dpsco

#endif  // DPSCO_RANDOM_RNG_H_
