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

#ifndef DPSCO_ESTIMATORS_GROUPING_H_
#define DPSCO_ESTIMATORS_GROUPING_H_

#include <cstdint>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/estimators/types.h"
#include "dpsco/privacy/budget.h"
#include "dpsco/random/rng.h"

namespace dpsco {

// Randomly partitions the samples into k bins of m = floor(n / k) and
// returns Q_j = (1/m) sum_{i in B_j} Clip(X_i, R) + W_j with
// W_j ~ N(0, 2R^2 / (rho m^2) I), so each Q_j is rho-CDP in its bin.
//
// When k does not divide n, the n mod k samples that land last in the
// random permutation are dropped. With k = 1 no permutation is drawn and
// the result matches SimpleClipMean on the same stream.
//
// InvalidArgument if k < 1 or k > n.
absl::StatusOr<GroupedStats> GroupAverages(
    const Eigen::MatrixXd& samples, int64_t k, const ClipConfig& cfg,
    const CdpBudget& group_budget, Rng& rng,
    NoiseMode noise = NoiseMode::kPrivate);

}  // namespace dpsco

#endif  // DPSCO_ESTIMATORS_GROUPING_H_
