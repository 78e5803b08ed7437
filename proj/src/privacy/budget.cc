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

#include "dpsco/privacy/budget.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "dpsco/privacy/accounting.h"

namespace dpsco {

absl::StatusOr<ApproxDpBudget> ApproxDpBudget::Create(double epsilon,
                                                      double delta) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be positive and finite, got %g", epsilon));
  }
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  return ApproxDpBudget(epsilon, delta);
}

std::string ApproxDpBudget::DebugString() const {
  return absl::StrFormat("(eps=%.17g, delta=%.17g)", epsilon_, delta_);
}

absl::StatusOr<CdpBudget> CdpBudget::Create(double rho) {
  if (!std::isfinite(rho) || rho <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rho must be positive and finite, got %g", rho));
  }
  return CdpBudget(rho);
}

std::string CdpBudget::DebugString() const {
  return absl::StrFormat("(rho=%.17g)", rho_);
}

absl::StatusOr<SensitivityBound> SensitivityBound::Create(double delta2) {
  if (!std::isfinite(delta2) || delta2 < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sensitivity must be nonnegative and finite, got %g", delta2));
  }
  return SensitivityBound(delta2);
}

absl::StatusOr<NoiseScale> NoiseScale::Create(double sigma2) {
  if (!std::isfinite(sigma2) || sigma2 <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "noise variance must be positive and finite, got %g", sigma2));
  }
  return NoiseScale(sigma2);
}

namespace {
constexpr double kLedgerRelativeSlack = 1e-12;
}  // namespace

absl::Status CdpLedger::Spend(const CdpBudget& step) {
  const double next = spent_ + step.rho();
  // Relative slack for rounding in sums of equal splits like T * (rho / T).
  if (next > total_.rho() * (1 + kLedgerRelativeSlack)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "spending rho=%g would bring the total to %g, above the declared %g",
        step.rho(), next, total_.rho()));
  }
  spent_ = next;
  ++operations_;
  return absl::OkStatus();
}

ApproxDpLedger::ApproxDpLedger(ApproxDpBudget total, ApproxDpBudget per_step,
                               double delta_prime)
    : total_(total), per_step_(per_step), delta_prime_(delta_prime) {}

absl::Status ApproxDpLedger::Spend() {
  absl::StatusOr<ApproxDpBudget> next =
      AdvancedComposition(per_step_, steps_ + 1, delta_prime_);
  if (!next.ok()) return next.status();
  if (next->epsilon() > total_.epsilon() * (1 + kLedgerRelativeSlack) ||
      next->delta() > total_.delta() * (1 + kLedgerRelativeSlack)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "step %d would compose to %s, exceeding the declared %s", steps_ + 1,
        next->DebugString(), total_.DebugString()));
  }
  ++steps_;
  return absl::OkStatus();
}

absl::StatusOr<ApproxDpBudget> ApproxDpLedger::Composed() const {
  if (steps_ == 0) {
    return absl::FailedPreconditionError("no steps recorded");
  }
  return AdvancedComposition(per_step_, steps_, delta_prime_);
}

}  // namespace dpsco
