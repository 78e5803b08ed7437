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

#include "dpsco/estimators/iterative_updating.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "absl/strings/str_format.h"
#include "dpsco/estimators/direction_estimate.h"
#include "dpsco/estimators/grouping.h"
#include "dpsco/privacy/accounting.h"

namespace dpsco {
namespace {

// Columns sorted lexicographically; a canonical representative of the
// multiset of group means.
Eigen::MatrixXd CanonicalOrder(const Eigen::MatrixXd& columns) {
  std::vector<Eigen::Index> idx(columns.cols());
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      if (columns(r, a) != columns(r, b)) return columns(r, a) < columns(r, b);
    }
    return false;
  });
  Eigen::MatrixXd sorted(columns.rows(), columns.cols());
  for (size_t j = 0; j < idx.size(); ++j) sorted.col(j) = columns.col(idx[j]);
  return sorted;
}

}  // namespace

int64_t DefaultGroupCount(int64_t n) {
  if (n < 2) return 1;
  const double nd = static_cast<double>(n);
  const auto from_confidence =
      static_cast<int64_t>(std::ceil(800.0 * std::log(nd * nd)));
  return std::max<int64_t>(1, std::min(from_confidence, n / 2));
}

absl::StatusOr<MeanEstimate> RunIterativeUpdates(const GroupedStats& stats,
                                                 const SpentBudget& budget,
                                                 const IterativeOptions& opts) {
  if (opts.iterations < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "iteration count t_c must be positive, got %d", opts.iterations));
  }
  if (stats.k() < 1) {
    return absl::InvalidArgumentError("no group means");
  }
  GroupedStats canonical;
  canonical.group_means = CanonicalOrder(stats.group_means);
  canonical.group_size = stats.group_size;
  canonical.noise = stats.noise;

  Eigen::VectorXd c = opts.initial_point.has_value()
                          ? *opts.initial_point
                          : CoordinateMedian(canonical.group_means);
  if (c.size() != stats.dimension()) {
    return absl::InvalidArgumentError("initial point has the wrong dimension");
  }

  MeanEstimate out{.value = {}, .iterate_trace = {}, .budget_spent = budget};
  out.iterate_trace.reserve(opts.iterations + 1);
  for (int l = 0; l <= opts.iterations; ++l) {
    absl::StatusOr<EstOutcome> est = EstimateDirectionDistance(canonical, c);
    if (!est.ok()) return est.status();
    out.iterate_trace.push_back({c, est->distance});
    if (l == opts.iterations) break;
    // A negative estimate means c is already inside the bulk; stay put.
    c += (kIterativeStepSize * std::max(est->distance, 0.0)) * est->direction;
  }

  size_t best = 0;
  for (size_t l = 1; l < out.iterate_trace.size(); ++l) {
    if (out.iterate_trace[l].distance < out.iterate_trace[best].distance) {
      best = l;
    }
  }
  out.value = out.iterate_trace[best].iterate;
  if (!out.value.allFinite()) {
    return absl::InternalError("iterative update produced a non-finite mean");
  }
  return out;
}

absl::StatusOr<MeanEstimate> IterativeUpdateMean(const Eigen::MatrixXd& samples,
                                                 const ClipConfig& cfg,
                                                 const ApproxDpBudget& total,
                                                 int64_t k, Rng& rng,
                                                 const IterativeOptions& opts) {
  if (k < 1 || k > samples.cols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "group count k=%d must lie in [1, n] with n=%d", k, samples.cols()));
  }
  absl::StatusOr<CdpBudget> group_budget = ShuffleAmplifiedGroupBudget(total, k);
  if (!group_budget.ok()) return group_budget.status();
  absl::StatusOr<GroupedStats> stats =
      GroupAverages(samples, k, cfg, *group_budget, rng, opts.noise);
  if (!stats.ok()) return stats.status();
  return RunIterativeUpdates(*stats, total, opts);
}

}  // namespace dpsco
