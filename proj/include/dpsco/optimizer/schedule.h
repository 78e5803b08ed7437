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

// Step count, step size and clipping radius for private SGD.
//
// The rate formulas give a dimensionless radius r (the radius for M = 1).
// T is computed from r; the clipping radius actually used is
// R = radius_multiplier * M * r. Keeping T free of M and of the multiplier
// means rescaling the gradients rescales R and nothing else.

#ifndef DPSCO_OPTIMIZER_SCHEDULE_H_
#define DPSCO_OPTIMIZER_SCHEDULE_H_

#include <cstdint>
#include <string>
#include <variant>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsco/optimizer/problem.h"
#include "dpsco/privacy/budget.h"

namespace dpsco {

struct Schedule {
  int64_t steps = 0;           // T
  double learning_rate = 0.0;  // eta
  double clip_radius = 0.0;    // R

  absl::Status Validate() const;
  std::string DebugString() const;
};

// A schedule together with the budget each of its T gradient estimates may
// spend: rho for simple clipping, (eps0, delta0) for iterative updating.
struct PrivateSchedule {
  Schedule schedule;
  std::variant<CdpBudget, ApproxDpBudget> per_step;
};

// sqrt(d) * min((n sqrt(rho) / sqrt(d))^(1/p), (n / d)^(1/p)).
double SimpleClippingUnitRadius(int64_t n, int dimension, double p, double rho);

// sqrt(d) * (n eps / sqrt(d))^(1/p).
double IterativeUnitRadius(int64_t n, int dimension, double p, double epsilon);

// T = max(1, ceil(rho n^2 / (d r^2))) with r = SimpleClippingUnitRadius,
// eta = 1 / sqrt(2 T lambda^2), R = radius_multiplier * M * r. `rho` is the
// total zCDP budget.
absl::StatusOr<Schedule> SimpleClippingScheduleForRho(
    int64_t n, const ProblemInstance& problem, double rho,
    double radius_multiplier = 1.0);

// Converts `total` to rho (OutOfRange for eps > 1), builds the schedule
// above and splits rho evenly over the T steps.
absl::StatusOr<PrivateSchedule> ScheduleSimpleClipping(
    int64_t n, const ProblemInstance& problem, const ApproxDpBudget& total,
    double radius_multiplier = 1.0);

// T = max(1, ceil(n^2 eps^2 / (d r^2))) with r = IterativeUnitRadius,
// eta and R as above, and per-step (eps0, delta0) from PerStepDpBudget.
// OutOfRange for eps > 1.
absl::StatusOr<PrivateSchedule> ScheduleIterative(
    int64_t n, const ProblemInstance& problem, const ApproxDpBudget& total,
    double radius_multiplier = 1.0);

}  // namespace dpsco

#endif  // DPSCO_OPTIMIZER_SCHEDULE_H_
