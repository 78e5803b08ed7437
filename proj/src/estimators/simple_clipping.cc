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

#include "dpsco/estimators/simple_clipping.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "dpsco/estimators/clip.h"
#include "dpsco/privacy/accounting.h"

namespace dpsco {

absl::StatusOr<ClipConfig> ClipConfig::Create(double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("clipping radius must be positive, got %g", radius));
  }
  return ClipConfig(radius);
}

absl::StatusOr<MeanEstimate> SimpleClipMean(const Eigen::MatrixXd& samples,
                                            const ClipConfig& cfg,
                                            const CdpBudget& budget, Rng& rng,
                                            NoiseMode noise) {
  const int64_t n = samples.cols();
  if (n < 1) {
    return absl::InvalidArgumentError("cannot estimate the mean of no samples");
  }
  absl::StatusOr<SensitivityBound> sens =
      ClippedMeanSensitivity(cfg.radius(), n);
  if (!sens.ok()) return sens.status();
  absl::StatusOr<NoiseScale> scale = GaussianNoiseScale(*sens, budget);
  if (!scale.ok()) return scale.status();

  MeanEstimate out{.value = ClippedMean(samples, cfg.radius()),
                   .iterate_trace = {},
                   .budget_spent = budget};
  if (noise == NoiseMode::kPrivate) {
    const double sigma = std::sqrt(scale->sigma2());
    for (Eigen::Index i = 0; i < out.value.size(); ++i) {
      out.value[i] += sigma * rng.Normal();
    }
  }
  return out;
}

absl::StatusOr<double> ClippingBiasBound(double p, double moment_bound,
                                         int dimension, double radius) {
  if (!(p >= 2)) {
    return absl::OutOfRangeError(
        absl::StrFormat("the clipping bias bound needs p >= 2, got %g", p));
  }
  if (!(radius > 0) || !(moment_bound > 0) || dimension < 1) {
    return absl::InvalidArgumentError(
        "radius, moment bound and dimension must be positive");
  }
  const double d = dimension;
  return std::exp(0.5 * p * std::log(d) + p * std::log(moment_bound) +
                  (1 - p) * std::log(radius)) /
         (p - 1);
}

}  // namespace dpsco
