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

#include "dpsco/optimizer/gradient_estimator.h"

#include <utility>

#include "dpsco/estimators/simple_clipping.h"

namespace dpsco {

absl::StatusOr<Eigen::VectorXd> SampleMeanEstimator::Estimate(
    const Eigen::VectorXd& /*w*/, const Eigen::MatrixXd& gradients,
    Rng& /*rng*/) const {
  if (gradients.cols() == 0) {
    return absl::InvalidArgumentError("no per-sample gradients");
  }
  return Eigen::VectorXd(gradients.rowwise().mean());
}

absl::StatusOr<Eigen::VectorXd> SimpleClippingEstimator::Estimate(
    const Eigen::VectorXd& /*w*/, const Eigen::MatrixXd& gradients,
    Rng& rng) const {
  absl::StatusOr<MeanEstimate> est =
      SimpleClipMean(gradients, cfg_, per_step_, rng, noise_);
  if (!est.ok()) return est.status();
  return std::move(est->value);
}

absl::StatusOr<Eigen::VectorXd> IterativeEstimator::Estimate(
    const Eigen::VectorXd& /*w*/, const Eigen::MatrixXd& gradients,
    Rng& rng) const {
  absl::StatusOr<MeanEstimate> est =
      IterativeUpdateMean(gradients, cfg_, per_step_, k_, rng, opts_);
  if (!est.ok()) return est.status();
  return std::move(est->value);
}

}  // namespace dpsco
