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

#ifndef DPSCO_ESTIMATORS_SIMPLE_CLIPPING_H_
#define DPSCO_ESTIMATORS_SIMPLE_CLIPPING_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/estimators/types.h"
#include "dpsco/privacy/budget.h"
#include "dpsco/random/rng.h"

namespace dpsco {

// (1/n) sum_i Clip(X_i, R) + W with W ~ N(0, 2R^2 / (rho n^2) I); rho-CDP.
// Samples are the columns of `samples`.
absl::StatusOr<MeanEstimate> SimpleClipMean(
    const Eigen::MatrixXd& samples, const ClipConfig& cfg,
    const CdpBudget& budget, Rng& rng,
    NoiseMode noise = NoiseMode::kPrivate);

// Upper bound d^(p/2) M^p R^(1-p) / (p - 1) on the clipping bias
// ||E Clip(X, R) - E X|| when E|<u, X>|^p <= M^p for all unit u.
// OutOfRange for p < 2.
absl::StatusOr<double> ClippingBiasBound(double p, double moment_bound,
                                         int dimension, double radius);

}  // namespace dpsco

#endif  // DPSCO_ESTIMATORS_SIMPLE_CLIPPING_H_
