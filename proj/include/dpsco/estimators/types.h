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

#ifndef DPSCO_ESTIMATORS_TYPES_H_
#define DPSCO_ESTIMATORS_TYPES_H_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpsco/privacy/budget.h"

namespace dpsco {

// kDisabledForTesting zeroes every Gaussian noise term. It exists for exact
// tests of the non-private arithmetic and is never selected by the
// benchmark CLI.
enum class NoiseMode { kPrivate, kDisabledForTesting };

class ClipConfig {
 public:
  static absl::StatusOr<ClipConfig> Create(double radius);

  double radius() const { return radius_; }

 private:
  explicit ClipConfig(double radius) : radius_(radius) {}

  double radius_;
};

// Noisy group averages Q_1..Q_k, one per column.
struct GroupedStats {
  Eigen::MatrixXd group_means;  // d x k
  int64_t group_size = 0;       // m
  // Per-coordinate noise variance; empty when noise was disabled.
  std::optional<NoiseScale> noise;

  int64_t k() const { return group_means.cols(); }
  int dimension() const { return static_cast<int>(group_means.rows()); }
};

// Solution (s, u, b) of the trimmed max-margin program
//
//   max s  s.t.  b_j <Q_j - c, u> >= b_j s,  sum_j b_j >= 0.9 k,  ||u|| = 1.
//
// `distance` is the signed optimum s: it is negative when c lies inside the
// bulk of the group means, where no direction has 90% of the projections
// ahead of c.
struct EstOutcome {
  double distance = 0;
  Eigen::VectorXd direction;
  std::vector<bool> selected;
};

struct IterateRecord {
  Eigen::VectorXd iterate;
  double distance = 0;
};

using SpentBudget = std::variant<CdpBudget, ApproxDpBudget>;

struct MeanEstimate {
  Eigen::VectorXd value;
  // (c_l, d_l) for l = 1..t_c+1; empty for simple clipping.
  std::vector<IterateRecord> iterate_trace;
  SpentBudget budget_spent;
};

}  // namespace dpsco

#endif  // DPSCO_ESTIMATORS_TYPES_H_
