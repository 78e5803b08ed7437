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

// Iterative updating mean estimator. The samples are clipped and averaged in
// k random groups with Gaussian noise; an iterate c then repeatedly moves by
// a quarter of the estimated distance along the estimated direction toward
// the center of the group means. The iterate with the smallest distance
// estimate is returned.
//
// The map from the group means to the output is permutation invariant (the
// group means are put in a canonical order first), which is what lets each
// group run at the amplified budget of ShuffleAmplifiedGroupBudget.

#ifndef DPSCO_ESTIMATORS_ITERATIVE_UPDATING_H_
#define DPSCO_ESTIMATORS_ITERATIVE_UPDATING_H_

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/estimators/types.h"
#include "dpsco/privacy/budget.h"
#include "dpsco/random/rng.h"

namespace dpsco {

inline constexpr double kIterativeStepSize = 0.25;
inline constexpr int kDefaultIterations = 40;

struct IterativeOptions {
  int iterations = kDefaultIterations;  // t_c
  // c_1; the coordinate-wise median of the group means when unset.
  std::optional<Eigen::VectorXd> initial_point;
  NoiseMode noise = NoiseMode::kPrivate;
};

// Runs t_c updates c_{l+1} = c_l + max(d_l, 0) g_l / 4 from the group
// means and returns c_{l*}, l* = argmin_l d_l over the t_c + 1 visited
// iterates (smallest l wins ties). Deterministic; bit-identical under any
// permutation of the columns of stats.group_means.
absl::StatusOr<MeanEstimate> RunIterativeUpdates(const GroupedStats& stats,
                                                 const SpentBudget& budget,
                                                 const IterativeOptions& opts);

// Full estimator: per-group budget from ShuffleAmplifiedGroupBudget(total, k)
// (OutOfRange outside the amplification regime), GroupAverages, then
// RunIterativeUpdates. The overall output is (eps, delta)-DP.
absl::StatusOr<MeanEstimate> IterativeUpdateMean(
    const Eigen::MatrixXd& samples, const ClipConfig& cfg,
    const ApproxDpBudget& total, int64_t k, Rng& rng,
    const IterativeOptions& opts = {});

// 800 ln(1/beta) groups at beta = 1/n^2, capped at n/2 (at least 1).
int64_t DefaultGroupCount(int64_t n);

}  // namespace dpsco

#endif  // DPSCO_ESTIMATORS_ITERATIVE_UPDATING_H_
