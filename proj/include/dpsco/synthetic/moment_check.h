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

#ifndef DPSCO_SYNTHETIC_MOMENT_CHECK_H_
#define DPSCO_SYNTHETIC_MOMENT_CHECK_H_

#include <cstdint>
#include <string>

#include "dpsco/random/rng.h"
#include "dpsco/synthetic/heavy_tail.h"

namespace dpsco {

// Monte-Carlo certification of a HeavyTailSpec. All moments are taken about
// the spec mean.
struct MomentReport {
  int64_t samples = 0;
  int directions = 0;

  // max over the probe directions u of the estimate of E|<u, X - mu>|^p,
  // with the standard error of that estimate.
  double directional_moment = 0;
  double directional_se = 0;
  double directional_bound = 0;  // M^p
  // Critical value applied to each direction: 3 standard errors,
  // Bonferroni-widened for the number of probe directions.
  double critical_z = 3;

  // Estimate of E||X - mu||^p against d^(p/2) M^p, at 3 standard errors.
  double norm_moment = 0;
  double norm_se = 0;
  double norm_bound = 0;

  // Hill estimate of the tail index of ||X - mu|| from the top
  // sqrt(samples) order statistics. A value <= p means the order-p moment
  // is not finite and the two averages above are not meaningful.
  double tail_index = 0;

  bool directional_ok = false;
  bool norm_ok = false;
  bool tail_ok = false;

  bool passed() const { return directional_ok && norm_ok && tail_ok; }
  double directional_margin() const {
    return directional_bound + critical_z * directional_se -
           directional_moment;
  }
  double norm_margin() const {
    return norm_bound + 3.0 * norm_se - norm_moment;
  }
  std::string DebugString() const;
};

// Draws n_mc samples in chunks (memory is O(chunk * d + sqrt(n_mc))) and
// n_dirs uniformly random probe directions. Recommended n_mc >= 1e5.
MomentReport VerifyMomentBound(const HeavyTailSpec& spec, int64_t n_mc,
                               int n_dirs, Rng& rng);

}  // namespace dpsco

#endif  // DPSCO_SYNTHETIC_MOMENT_CHECK_H_
