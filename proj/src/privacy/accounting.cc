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

#include "dpsco/privacy/accounting.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_format.h"

namespace dpsco {
namespace {

absl::Status CheckDelta(double delta) {
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  return absl::OkStatus();
}

absl::Status CheckSteps(int64_t steps) {
  if (steps < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("step count must be positive, got %d", steps));
  }
  return absl::OkStatus();
}

absl::Status CheckUnitEpsilon(double epsilon) {
  if (epsilon > 1) {
    return absl::OutOfRangeError(absl::StrFormat(
        "epsilon=%g exceeds 1; the composed-budget guarantee needs eps <= 1 "
        "(use the unchecked variant to probe outside this regime)",
        epsilon));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<NoiseScale> GaussianNoiseScale(const SensitivityBound& sens,
                                              const CdpBudget& budget) {
  if (sens.delta2() <= 0) {
    return absl::InvalidArgumentError(
        "Gaussian noise calibration needs a positive sensitivity");
  }
  return NoiseScale::Create(sens.delta2() * sens.delta2() /
                            (2.0 * budget.rho()));
}

absl::StatusOr<SensitivityBound> ClippedMeanSensitivity(double radius,
                                                        int64_t n) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("clipping radius must be positive, got %g", radius));
  }
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sample count must be positive, got %d", n));
  }
  return SensitivityBound::Create(2.0 * radius / static_cast<double>(n));
}

absl::StatusOr<CdpBudget> CdpCompose(absl::Span<const CdpBudget> budgets) {
  if (budgets.empty()) {
    return absl::InvalidArgumentError("cannot compose an empty budget list");
  }
  double rho = 0.0;
  for (const CdpBudget& b : budgets) rho += b.rho();
  return CdpBudget::Create(rho);
}

absl::StatusOr<CdpBudget> DpToCdp(double epsilon) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be positive, got %g", epsilon));
  }
  return CdpBudget::Create(epsilon * epsilon / 2.0);
}

absl::StatusOr<ApproxDpBudget> CdpToDp(const CdpBudget& budget, double delta) {
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  const double rho = budget.rho();
  return ApproxDpBudget::Create(rho + 2.0 * std::sqrt(rho * std::log(1 / delta)),
                                delta);
}

absl::StatusOr<ApproxDpBudget> AdvancedComposition(const ApproxDpBudget& step,
                                                   int64_t k,
                                                   double delta_prime) {
  if (absl::Status s = CheckSteps(k); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta_prime); !s.ok()) return s;
  const double kd = static_cast<double>(k);
  const double eps = step.epsilon();
  const double total_delta = kd * step.delta() + delta_prime;
  if (total_delta >= 1) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "composed delta k*delta + delta' = %g is not below 1", total_delta));
  }
  const double total_eps = std::sqrt(2.0 * kd * std::log(1 / delta_prime)) * eps +
                           kd * eps * std::expm1(eps);
  return ApproxDpBudget::Create(total_eps, total_delta);
}

absl::StatusOr<CdpBudget> TotalCdpBudgetUnchecked(const ApproxDpBudget& total) {
  const double denom = 1.0 + 2.0 * std::sqrt(std::log(1 / total.delta()));
  return CdpBudget::Create(total.epsilon() * total.epsilon() / (denom * denom));
}

absl::StatusOr<CdpBudget> TotalCdpBudget(const ApproxDpBudget& total) {
  if (absl::Status s = CheckUnitEpsilon(total.epsilon()); !s.ok()) return s;
  return TotalCdpBudgetUnchecked(total);
}

absl::StatusOr<CdpBudget> PerStepCdpBudgetUnchecked(double total_epsilon,
                                                    double delta,
                                                    int64_t steps) {
  if (absl::Status s = CheckSteps(steps); !s.ok()) return s;
  absl::StatusOr<ApproxDpBudget> total =
      ApproxDpBudget::Create(total_epsilon, delta);
  if (!total.ok()) return total.status();
  absl::StatusOr<CdpBudget> rho = TotalCdpBudgetUnchecked(*total);
  if (!rho.ok()) return rho.status();
  return CdpBudget::Create(rho->rho() / static_cast<double>(steps));
}

absl::StatusOr<CdpBudget> PerStepCdpBudget(double total_epsilon, double delta,
                                           int64_t steps) {
  if (absl::Status s = CheckUnitEpsilon(total_epsilon); !s.ok()) return s;
  return PerStepCdpBudgetUnchecked(total_epsilon, delta, steps);
}

double ShuffleAmplificationEpsilonLimit(double delta, int64_t k) {
  constexpr double kE2 = std::numbers::e * std::numbers::e;
  return 8.0 * kE2 * std::sqrt(std::log(4 / delta) / static_cast<double>(k));
}

absl::StatusOr<CdpBudget> ShuffleAmplifiedGroupBudget(
    const ApproxDpBudget& total, int64_t k) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("group count must be positive, got %d", k));
  }
  const double eps = total.epsilon();
  const double delta = total.delta();
  const double limit = ShuffleAmplificationEpsilonLimit(delta, k);
  if (eps > limit) {
    return absl::OutOfRangeError(absl::StrFormat(
        "epsilon=%g exceeds the shuffle amplification bound "
        "8e^2 sqrt(ln(4/delta)/k) = %g for k=%d, delta=%g",
        eps, limit, k, delta));
  }
  const double kd = static_cast<double>(k);
  const double e4 = std::exp(4.0);
  const double inner = 1.0 + 2.0 * std::sqrt(std::log(12.0 * kd / delta));
  const double rho =
      eps * eps * kd / (64.0 * e4 * std::log(8 / delta) * inner * inner);
  return CdpBudget::Create(rho);
}

absl::StatusOr<ApproxDpBudget> PerStepDpBudget(const ApproxDpBudget& total,
                                               int64_t steps) {
  if (absl::Status s = CheckSteps(steps); !s.ok()) return s;
  const double t = static_cast<double>(steps);
  const double eps0 =
      total.epsilon() / (2.0 * std::sqrt(2.0 * t * std::log(2 / total.delta())));
  return ApproxDpBudget::Create(eps0, total.delta() / (2.0 * t));
}

}  // namespace dpsco
