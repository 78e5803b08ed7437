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

#include "dpsco/estimators/grouping.h"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "absl/types/span.h"
#include "dpsco/estimators/clip.h"
#include "dpsco/privacy/accounting.h"

namespace dpsco {

absl::StatusOr<GroupedStats> GroupAverages(const Eigen::MatrixXd& samples,
                                           int64_t k, const ClipConfig& cfg,
                                           const CdpBudget& group_budget,
                                           Rng& rng, NoiseMode noise) {
  const int64_t n = samples.cols();
  if (k < 1 || k > n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "group count k=%d must lie in [1, n] with n=%d", k, n));
  }
  const int64_t m = n / k;
  absl::StatusOr<SensitivityBound> sens =
      ClippedMeanSensitivity(cfg.radius(), m);
  if (!sens.ok()) return sens.status();
  absl::StatusOr<NoiseScale> scale = GaussianNoiseScale(*sens, group_budget);
  if (!scale.ok()) return scale.status();

  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), int64_t{0});
  if (k > 1) {
    // Fisher-Yates on the portable stream.
    for (int64_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<int64_t>(
          rng.UniformInt(static_cast<uint64_t>(i + 1)));
      std::swap(order[i], order[j]);
    }
  }

  GroupedStats stats;
  stats.group_size = m;
  stats.group_means.resize(samples.rows(), k);
  const absl::Span<const int64_t> all(order);
  for (int64_t j = 0; j < k; ++j) {
    stats.group_means.col(j) =
        ClippedMean(samples, cfg.radius(), all.subspan(j * m, m));
  }
  if (noise == NoiseMode::kPrivate) {
    stats.noise = *scale;
    const double sigma = std::sqrt(scale->sigma2());
    for (int64_t j = 0; j < k; ++j) {
      for (Eigen::Index i = 0; i < stats.group_means.rows(); ++i) {
        stats.group_means(i, j) += sigma * rng.Normal();
      }
    }
  }
  return stats;
}

}  // namespace dpsco
