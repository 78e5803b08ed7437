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

// Distance and direction estimation from the current iterate c to the
// center of the group means, via the trimmed max-margin program documented
// on EstOutcome.

#ifndef DPSCO_ESTIMATORS_DIRECTION_ESTIMATE_H_
#define DPSCO_ESTIMATORS_DIRECTION_ESTIMATE_H_

#include <cstdint>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsco/estimators/types.h"

namespace dpsco {

inline constexpr int kEstMaxRounds = 20;
inline constexpr double kEstImprovementTolerance = 1e-9;

// Brute-force limits.
inline constexpr int kBruteForceMaxDimension = 3;
inline constexpr int64_t kBruteForceMaxGroups = 256;
inline constexpr int kBruteForceMaxGrid = 1 << 20;
inline constexpr int kBruteForceMaxGrid3d = 2048;

// ceil(0.9 k): the number of groups the program must select.
int64_t SelectionSize(int64_t k);

// For a fixed unit direction u the best mask keeps the SelectionSize(k)
// largest projections <Q_j - c, u>, and s is the smallest of them. Ties are
// broken toward the lower column index.
EstOutcome EvaluateDirection(const Eigen::MatrixXd& offsets,
                             const Eigen::VectorXd& direction);

// Alternating maximization. Starts from the direction of the coordinate-wise
// median of the Q_j as seen from c (falling back to the mean, then e_1),
// then alternates between the best mask for u and u = normalized mean of the
// selected offsets, for at most kEstMaxRounds rounds or until s improves by
// less than kEstImprovementTolerance. The same ascent is repeated from the
// opposite starting direction and the larger s is kept. The result is always
// feasible.
//
// InvalidArgument when there are no groups or c has the wrong dimension.
absl::StatusOr<EstOutcome> EstimateDirectionDistance(const GroupedStats& stats,
                                                     const Eigen::VectorXd& c);

// Reference solver. Evaluates EvaluateDirection on every candidate
// direction and keeps the best:
//   d = 1  u in {+1, -1} (exact);
//   d = 2  `direction_grid` equally spaced angles, every Q_j - c, and both
//          normals of every difference Q_i - Q_j. These contain all local
//          maxima of s(u) on the circle, so the result is exact;
//   d = 3  a (grid x 2 grid) latitude/longitude grid plus every Q_j - c;
//          approximate up to grid resolution.
// InvalidArgument beyond kBruteForceMax* limits.
absl::StatusOr<EstOutcome> EstBruteForce(const GroupedStats& stats,
                                         const Eigen::VectorXd& c,
                                         int direction_grid);

// Checks every constraint of the program for (s, u, b): unit direction to
// `tolerance`, at least SelectionSize(k) selected, and every selected
// projection >= s.
absl::Status CheckEstFeasibility(const GroupedStats& stats,
                                 const Eigen::VectorXd& c,
                                 const EstOutcome& outcome,
                                 double tolerance = 1e-9);

// Coordinate-wise median of the columns (midpoint for even counts).
Eigen::VectorXd CoordinateMedian(const Eigen::MatrixXd& columns);

}  // namespace dpsco

#endif  // DPSCO_ESTIMATORS_DIRECTION_ESTIMATE_H_
