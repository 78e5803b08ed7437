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

#include "dpsco/optimizer/schedule.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "dpsco/privacy/accounting.h"

namespace dpsco {
namespace {

absl::Status CheckProblem(int64_t n, const ProblemInstance& problem,
                          double radius_multiplier) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sample count must be positive, got %d", n));
  }
  if (problem.dimension < 1) {
    return absl::InvalidArgumentError("problem dimension must be positive");
  }
  if (!(problem.moment_order >= 2)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "moment order must be at least 2, got %g", problem.moment_order));
  }
  if (!(problem.smoothness > 0) || !(problem.moment_bound > 0)) {
    return absl::InvalidArgumentError(
        "smoothness and moment bound must be positive");
  }
  if (!(radius_multiplier > 0) || !std::isfinite(radius_multiplier)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "radius multiplier must be positive, got %g", radius_multiplier));
  }
  return absl::OkStatus();
}

absl::StatusOr<int64_t> CeilSteps(double raw) {
  if (!std::isfinite(raw) ||
      raw >= static_cast<double>(std::numeric_limits<int64_t>::max() / 2)) {
    return absl::ResourceExhaustedError(
        absl::StrFormat("step count %g is not representable", raw));
  }
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(raw)));
}

absl::StatusOr<Schedule> Finish(int64_t steps, double unit_radius,
                                const ProblemInstance& problem,
                                double radius_multiplier) {
  Schedule s;
  s.steps = steps;
  s.learning_rate =
      1.0 / (problem.smoothness * std::sqrt(2.0 * static_cast<double>(steps)));
  s.clip_radius = radius_multiplier * problem.moment_bound * unit_radius;
  if (absl::Status st = s.Validate(); !st.ok()) return st;
  return s;
}

}  // namespace

absl::Status Schedule::Validate() const {
  if (steps < 1 || !(learning_rate > 0) || !std::isfinite(learning_rate) ||
      !(clip_radius > 0) || !std::isfinite(clip_radius)) {
    return absl::InvalidArgumentError("invalid schedule: " + DebugString());
  }
  return absl::OkStatus();
}

std::string Schedule::DebugString() const {
  return absl::StrFormat("Schedule{T=%d, eta=%.6g, R=%.6g}", steps,
                         learning_rate, clip_radius);
}

double SimpleClippingUnitRadius(int64_t n, int dimension, double p,
                                double rho) {
  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(dimension);
  const double sqrt_d = std::sqrt(d);
  const double privacy = std::pow(nd * std::sqrt(rho) / sqrt_d, 1.0 / p);
  const double sampling = std::pow(nd / d, 1.0 / p);
  return sqrt_d * std::min(privacy, sampling);
}

double IterativeUnitRadius(int64_t n, int dimension, double p,
                           double epsilon) {
  const double sqrt_d = std::sqrt(static_cast<double>(dimension));
  return sqrt_d *
         std::pow(static_cast<double>(n) * epsilon / sqrt_d, 1.0 / p);
}

absl::StatusOr<Schedule> SimpleClippingScheduleForRho(
    int64_t n, const ProblemInstance& problem, double rho,
    double radius_multiplier) {
  if (absl::Status s = CheckProblem(n, problem, radius_multiplier); !s.ok()) {
    return s;
  }
  if (!(rho > 0) || !std::isfinite(rho)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rho must be positive and finite, got %g", rho));
  }
  const double r =
      SimpleClippingUnitRadius(n, problem.dimension, problem.moment_order, rho);
  const double nd = static_cast<double>(n);
  absl::StatusOr<int64_t> steps =
      CeilSteps(rho * nd * nd / (problem.dimension * r * r));
  if (!steps.ok()) return steps.status();
  return Finish(*steps, r, problem, radius_multiplier);
}

absl::StatusOr<PrivateSchedule> ScheduleSimpleClipping(
    int64_t n, const ProblemInstance& problem, const ApproxDpBudget& total,
    double radius_multiplier) {
  absl::StatusOr<CdpBudget> rho = TotalCdpBudget(total);
  if (!rho.ok()) return rho.status();
  absl::StatusOr<Schedule> schedule =
      SimpleClippingScheduleForRho(n, problem, rho->rho(), radius_multiplier);
  if (!schedule.ok()) return schedule.status();
  absl::StatusOr<CdpBudget> per_step =
      PerStepCdpBudget(total.epsilon(), total.delta(), schedule->steps);
  if (!per_step.ok()) return per_step.status();
  return PrivateSchedule{*schedule, *per_step};
}

absl::StatusOr<PrivateSchedule> ScheduleIterative(
    int64_t n, const ProblemInstance& problem, const ApproxDpBudget& total,
    double radius_multiplier) {
  if (absl::Status s = CheckProblem(n, problem, radius_multiplier); !s.ok()) {
    return s;
  }
  if (total.epsilon() > 1) {
    return absl::OutOfRangeError(absl::StrFormat(
        "epsilon=%g exceeds 1; the iterative schedule needs eps <= 1",
        total.epsilon()));
  }
  const double eps = total.epsilon();
  const double r =
      IterativeUnitRadius(n, problem.dimension, problem.moment_order, eps);
  const double nd = static_cast<double>(n);
  absl::StatusOr<int64_t> steps =
      CeilSteps(nd * nd * eps * eps / (problem.dimension * r * r));
  if (!steps.ok()) return steps.status();
  absl::StatusOr<Schedule> schedule =
      Finish(*steps, r, problem, radius_multiplier);
  if (!schedule.ok()) return schedule.status();
  absl::StatusOr<ApproxDpBudget> per_step = PerStepDpBudget(total, *steps);
  if (!per_step.ok()) return per_step.status();
  return PrivateSchedule{*schedule, *per_step};
}

}  // namespace dpsco
